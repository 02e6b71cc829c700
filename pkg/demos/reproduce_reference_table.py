"""
Reproducing the classic absorption-probability table
====================================================

The Hadamard walk between absorbing barriers at 0 and n, started at
site j moving right, is absorbed on the left with an exact rational
probability p_j^(n).  This script rebuilds the whole n = 2..9 table
from scratch by two independent exact pipelines and prints it in the
traditional shared-denominator style (7/10, 4/10, 3/10, ...).
"""

from hadwalk import p_closed, p_exact, row_common_denominator

# Every cell is computed twice: once in the quadratic field Q(sqrt 2)
# (p_closed) and once by evaluating the residue formula at t = -1/2
# (p_exact).  The two must agree exactly -- not approximately.
for n in range(2, 10):
    for j in range(1, n):
        assert p_closed(j, n) == p_exact(j, n)

# The table is usually printed over one denominator per row, so that
# patterns such as 205, 204, 203 in row 9 are visible at a glance.
print("left-barrier absorption probabilities p_j^(n)")
print()
header = "      " + "".join(f"{'j=' + str(j):<10}" for j in range(1, 9))
print(header.rstrip())
for n in range(2, 10):
    shared, nums = row_common_denominator(n)
    cells = "".join(f"{f'{m}/{shared}':<10}" for m in nums)
    print(f"n={n}   {cells.rstrip()}")

print()
# Two structural facts jump out of the table and hold for every n:
# the first and last entries of a row sum to 1, and doubling the first
# entry equals the second plus 1.
for n in range(2, 10):
    assert p_exact(1, n) + p_exact(n - 1, n) == 1
    assert 2 * p_exact(1, n) == p_exact(2, n) + 1
print("checked: p_1 + p_(n-1) = 1 and 2 p_1 = p_2 + 1 on every row")
