"""The two printed example matrices and their printed derived matrices."""

from fractions import Fraction

from .exact import ExactMatrix

HILBERT_4 = ExactMatrix.from_function(4, 4, lambda i, j: Fraction(1, i + j))

HILBERT_4_C2 = ExactMatrix(
    [
        ["1/72", "1/60", "1/60", "1/240", "1/180", "1/600"],
        ["1/60", "1/48", "3/140", "1/180", "4/525", "1/420"],
        ["1/60", "3/140", "9/400", "1/168", "1/120", "3/1120"],
        ["1/240", "1/180", "1/168", "1/600", "1/420", "1/1260"],
        ["1/180", "4/525", "1/120", "1/420", "1/288", "1/840"],
        ["1/600", "1/420", "3/1120", "1/1260", "1/840", "1/2352"],
    ]
)

CONDENSATION_6 = ExactMatrix(
    [
        [1, 18, 192, 924, 2332, 420],
        [32, 577, 6161, 29692, 75052, 13524],
        [425, 7682, 82145, 396687, 1004887, 181209],
        [2412, 43807, 469784, 2277800, 5795144, 1046584],
        [3080, 56720, 613350, 3009027, 7751484, 1406076],
        [1440, 27360, 301320, 1515996, 4007487, 733594],
    ]
)

CONDENSATION_6_D1 = ExactMatrix(
    [
        [1, 114, 8100, 106304, 16128],
        [599, 68863, 4939267, 64952080, 10006080],
        [88991, 10354673, 752675392, 9926679328, 1566406912],
        [1883080, 222874970, 16504110168, 218585490312, 35833764288],
        [2592000, 309614400, 23156130960, 307417847085, 51610862484],
    ]
)
