"""Printed transition matrices used as fixed reference data.

Row = target state, column = source state, entry = letter (0 for none).
"""

from __future__ import annotations

# affine B2: letters a={s1}, b={s2}, c={s3}, x={s2,s3}, y={s1,s3}, z={s1,s2}.
# The table is drawn for generator names in which s2 and s3 commute (x is the
# rotation about the right-angled corner).  B2_RENAME carries those names onto
# the corpus file, where s1 and s3 commute; B2_HYPERPLANES does the same for
# the hyperplane numbers in the state names.
B2_RENAME = {"s1": "s2", "s2": "s3", "s3": "s1"}
B2_HYPERPLANES = {1: 2, 2: 3, 3: 1, 4: 7, 5: 4, 6: 5, 7: 6, 8: 8}

# words of length two in the greedy language, same naming as the table
B2_LENGTH_TWO = ("ab", "ba", "ac", "ca", "ax", "xa", "zc", "yb")

B2_LETTERS = {"a": ("s1",), "b": ("s2",), "c": ("s3",),
              "x": ("s2", "s3"), "y": ("s1", "s3"), "z": ("s1", "s2")}

B2_STATES = ("", "1", "2", "3", "23", "27", "14", "15", "36", "368", "238", "278", "247", "147",
             "145", "156", "356", "3568", "2368", "2378", "2478", "1247", "1457", "1456", "1356")

B2_Q = """
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
a 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
b 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
c 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
x 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 b 0 0 0 0 0 b 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 a 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 a 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 c 0 0 0 0 c 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 c 0 0 0 0 0 0 0 0 0 0 0
0 x 0 0 0 0 x x 0 0 0 0 0 0 x 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 b 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 b 0 0 0 0 0 0 0 b 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 a 0 0 0 0 0 a 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 a 0 0 0 0 0 a 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 a a 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 c 0 0 0 0 0 0 c 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 c 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 x 0 0 0 0 0 0 0 0 x 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 x 0 0 0 0 0 0 0 x 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 b 0
z 0 0 z 0 0 0 0 z z 0 0 0 0 0 0 z z 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 a 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 a 0 0 0 0 0 0
y 0 y 0 0 y 0 0 0 0 0 y y 0 0 0 0 0 0 0 y 0 0 0 0
"""

# right-angled pentagon; faces in order e,1,2,3,4,5,12,15,23,34,45 and
# the entry in row i (when nonzero) is always the face of row i
PENTAGON_FACES = ((), ("s1",), ("s2",), ("s3",), ("s4",), ("s5",), ("s1", "s2"), ("s1", "s5"),
                  ("s2", "s3"), ("s3", "s4"), ("s4", "s5"))

PENTAGON_Q = """
0 0 0 0 0 0 0 0 0 0 0
1 0 0 1 1 0 0 0 0 1 0
1 0 0 0 1 1 0 0 0 0 1
1 1 0 0 0 1 0 1 0 0 0
1 1 1 0 0 0 1 0 0 0 0
1 0 1 1 0 0 0 0 1 0 0
1 0 0 1 1 1 0 0 0 1 1
1 0 1 1 1 0 0 0 1 1 0
1 1 0 0 1 1 0 1 0 0 1
1 1 1 0 0 1 1 1 0 0 0
1 1 1 1 0 0 1 0 1 0 0
"""

# free product of three Z/2: faces e, x, y, z
Z2_CUBED_J = ((-1, 0, 0, 0), (1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 0))
Z2_CUBED_J_INVERSE_TIMES_2 = ((-2, 0, 0, 0), (1, -1, 1, 1), (1, 1, -1, 1), (1, 1, 1, -1))
Z2_CUBED_D = (1, "x", "y", "z")

# infinite dihedral group, states e, x, y
DINF_Q = (("0", "0", "0"), ("x", "0", "x"), ("y", "y", "0"))


def grid(text: str) -> list[list[str]]:
    return [line.split() for line in text.strip().splitlines()]
