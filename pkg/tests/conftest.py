import sys

# exact bounds near the default threshold print with millions of digits
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)
