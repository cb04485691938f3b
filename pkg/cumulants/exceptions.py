# cumulants/exceptions.py
# Malformed input raises django.core.exceptions.ValidationError; this module
# only adds the guard for combinatorial blow-up.


class BudgetExceeded(Exception):
    """A computation would exceed a configured enumeration or summation budget."""

    def __init__(self, what, value, limit):
        self.what = what
        self.value = value
        self.limit = limit
        super().__init__(f"{what} = {value} exceeds the configured limit {limit}")
