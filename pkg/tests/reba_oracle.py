"""Independent straight-line posture scorer used to cross-check the engine.

Tables are transcribed here in the printed worksheet layout (different
index order from the engine asset) and every band is written as explicit
comparisons, so a transcription or lookup bug in either side shows up as a
mismatch.
"""

# [trunk][neck][legs]
TABLE_A = [
    [[1, 2, 3, 4], [1, 2, 3, 4], [3, 3, 5, 6]],
    [[2, 3, 4, 5], [3, 4, 5, 6], [4, 5, 6, 7]],
    [[2, 4, 5, 6], [4, 5, 6, 7], [5, 6, 7, 8]],
    [[3, 5, 6, 7], [5, 6, 7, 8], [6, 7, 8, 9]],
    [[4, 6, 7, 8], [6, 7, 8, 9], [7, 8, 9, 9]],
]

# [upper_arm][lower_arm][wrist]
TABLE_B = [
    [[1, 2, 2], [1, 2, 3]],
    [[1, 2, 3], [2, 3, 4]],
    [[3, 4, 5], [4, 5, 5]],
    [[4, 5, 5], [5, 6, 7]],
    [[6, 7, 8], [7, 8, 8]],
    [[7, 8, 8], [8, 9, 9]],
]

# [score_a][score_b]
TABLE_C = [
    [1, 1, 1, 2, 3, 3, 4, 5, 6, 7, 7, 7],
    [1, 2, 2, 3, 4, 4, 5, 6, 6, 7, 7, 8],
    [2, 3, 3, 3, 4, 5, 6, 7, 7, 8, 8, 8],
    [3, 4, 4, 4, 5, 6, 7, 8, 8, 9, 9, 9],
    [4, 4, 4, 5, 6, 7, 8, 8, 9, 9, 9, 9],
    [6, 6, 6, 7, 8, 8, 9, 9, 10, 10, 10, 10],
    [7, 7, 7, 8, 9, 9, 9, 10, 10, 11, 11, 11],
    [8, 8, 8, 9, 10, 10, 10, 10, 10, 11, 11, 11],
    [9, 9, 9, 10, 10, 10, 11, 11, 11, 12, 12, 12],
    [10, 10, 10, 11, 11, 11, 11, 12, 12, 12, 12, 12],
    [11, 11, 11, 11, 12, 12, 12, 12, 12, 12, 12, 12],
    [12, 12, 12, 12, 12, 12, 12, 12, 12, 12, 12, 12],
]


def _clamp(v, lo, hi):
    return min(max(v, lo), hi)


def trunk_score(angle, twist=False, side_bend=False):
    if -5 <= angle < 5:
        s = 1
    elif 5 <= angle < 20 or -20 <= angle < -5:
        s = 2
    elif 20 <= angle < 60 or -30 <= angle < -20:
        s = 3
    else:
        s = 4  # 60 .. 120
    return _clamp(s + int(twist) + int(side_bend), 1, 5)


def neck_score(angle, twist=False, side_bend=False):
    s = 1 if -10 <= angle < 20 else 2
    return _clamp(s + int(twist) + int(side_bend), 1, 3)


def leg_score(knee, unilateral=False):
    if knee < 30:
        s = 1
    elif knee < 60:
        s = 2
    else:
        s = 3
    return _clamp(s + int(unilateral), 1, 4)


def upper_arm_score(angle, abducted=False, raised=False, supported=False):
    if -20 <= angle < 20:
        s = 1
    elif 20 <= angle < 45 or -60 <= angle < -20:
        s = 2
    elif 45 <= angle < 90:
        s = 3
    else:
        s = 4  # 90 .. 180
    return _clamp(s + int(abducted) + int(raised) - int(supported), 1, 6)


def lower_arm_score(angle):
    return 1 if 60 <= angle <= 100 else 2


def wrist_score(angle, twist=False):
    s = 1 if -15 <= angle < 15 else 2
    return _clamp(s + int(twist), 1, 3)


def load_points(load_kg, shock=False):
    if load_kg < 5:
        s = 0
    elif load_kg <= 10:
        s = 1
    else:
        s = 2
    return s + int(shock)


COUPLING_POINTS = {"good": 0, "fair": 1, "poor": 2, "unacceptable": 3}


def action_name(grand):
    if grand <= 1:
        return "negligible"
    if grand <= 3:
        return "low"
    if grand <= 7:
        return "medium"
    if grand <= 10:
        return "high"
    return "very_high"


def naive_side(trunk_deg, neck_deg, knee_deg, upper_arm_deg, lower_arm_deg, wrist_deg,
               trunk_twist=False, trunk_side_bend=False,
               neck_twist=False, neck_side_bend=False,
               unilateral=False, abducted=False, raised=False, supported=False,
               wrist_twist=False,
               load_kg=0.0, shock=False, coupling="good", activity=0):
    """Everything frame scoring produces, computed the slow explicit way."""
    trunk = trunk_score(trunk_deg, trunk_twist, trunk_side_bend)
    neck = neck_score(neck_deg, neck_twist, neck_side_bend)
    legs = leg_score(knee_deg, unilateral)
    ua = upper_arm_score(upper_arm_deg, abducted, raised, supported)
    la = lower_arm_score(lower_arm_deg)
    wr = wrist_score(wrist_deg, wrist_twist)

    table_a = TABLE_A[trunk - 1][neck - 1][legs - 1]
    score_a = table_a + load_points(load_kg, shock)
    table_b = TABLE_B[ua - 1][la - 1][wr - 1]
    score_b = table_b + COUPLING_POINTS[coupling]
    table_c = TABLE_C[min(score_a, 12) - 1][min(score_b, 12) - 1]
    grand = table_c + activity
    return {
        "neck": neck, "trunk": trunk, "legs": legs,
        "upper_arm": ua, "lower_arm": la, "wrist": wr,
        "table_a": table_a, "score_a": score_a,
        "table_b": table_b, "score_b": score_b,
        "table_c": table_c, "grand": grand,
        "action_level": action_name(grand),
    }
