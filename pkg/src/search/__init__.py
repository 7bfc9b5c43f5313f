"""Search for MUB sets of the form {I, U1, D_1 U1, D_2 U1, ...} with diagonal D_j."""
