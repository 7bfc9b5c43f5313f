"""Dense numerical oracle and MUB checks."""
