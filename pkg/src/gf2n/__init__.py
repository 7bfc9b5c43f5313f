"""Binary-field arithmetic: polynomials over GF(2) and GF(2^n) contexts."""
