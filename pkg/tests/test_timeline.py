import math

import numpy as np
import pytest

from ergokit.model import EmptyWindow, JointId, Side
from ergokit.aggregate import timeline_window
from ergokit.scoring import score_dataset

from conftest import make_dataset, make_frame

TRUNK = JointId.parse("trunk")


def sine_dataset(n, fps=30.0, period=10.0, baseline=30.0, amplitude=25.0, noise=0.0,
                 seed=0):
    rng = np.random.default_rng(seed)
    frames = []
    for i in range(n):
        t = i / fps
        a = baseline + amplitude * math.sin(2 * math.pi * t / period)
        if noise:
            a += rng.uniform(-noise, noise)
        frames.append(make_frame(i, angles={"trunk": a}))
    return make_dataset(frames, fps=fps)


def test_lossless_when_small():
    scored = score_dataset(sine_dataset(100))
    (series,) = timeline_window(scored, [TRUNK], 0.0, 100 / 30.0, max_points=200)
    assert len(series.buckets) == 100
    for bucket, pos in zip(series.buckets, range(100)):
        a = scored.angles(TRUNK)[pos]
        assert bucket.min_deg == bucket.max_deg == bucket.first_deg == bucket.last_deg == a


def test_bucket_count_bounded():
    scored = score_dataset(sine_dataset(5000))
    (series,) = timeline_window(scored, [TRUNK], 0.0, 5000 / 30.0, max_points=500)
    assert len(series.buckets) <= 500


@pytest.mark.parametrize("factor", [10, 30])
def test_decimation_extrema_match_bruteforce(factor):
    n = 3000
    scored = score_dataset(sine_dataset(n, noise=1.5, seed=factor))
    angles = scored.angles(TRUNK)
    ts = scored.timestamps
    t1 = n / 30.0
    (series,) = timeline_window(scored, [TRUNK], 0.0, t1, max_points=n // factor)
    assert len(series.buckets) == n // factor
    for bucket in series.buckets:
        lo = np.searchsorted(ts, bucket.t_start, side="left")
        hi = np.searchsorted(ts, bucket.t_end, side="left")
        span = angles[lo:hi]
        assert bucket.min_deg == span.min()
        assert bucket.max_deg == span.max()
        assert bucket.first_deg == span[0]
        assert bucket.last_deg == span[-1]
        assert bucket.min_deg <= bucket.first_deg <= bucket.max_deg
        assert bucket.min_deg <= bucket.last_deg <= bucket.max_deg


def test_global_extrema_preserved():
    n = 15861
    scored = score_dataset(sine_dataset(n, noise=2.0, seed=3))
    angles = scored.angles(TRUNK)
    (series,) = timeline_window(scored, [TRUNK], 0.0, n / 30.0, max_points=500)
    assert len(series.buckets) <= 500
    assert min(b.min_deg for b in series.buckets) == angles.min()
    assert max(b.max_deg for b in series.buckets) == angles.max()


def test_buckets_tile_window():
    scored = score_dataset(sine_dataset(777))
    t0, t1 = 2.0, 20.0
    (series,) = timeline_window(scored, [TRUNK], t0, t1, max_points=37)
    assert series.buckets[0].t_start == t0
    assert series.buckets[-1].t_end == t1
    for a, b in zip(series.buckets, series.buckets[1:]):
        assert a.t_end == b.t_start


def test_per_joint_value_ranges_independent():
    frames = [make_frame(i, angles={"trunk": 40.0 + i, "wrist_left": float(i) / 10})
              for i in range(30)]
    scored = score_dataset(make_dataset(frames))
    series = timeline_window(scored, [TRUNK, JointId.parse("wrist_left")],
                             0.0, 1.0, max_points=50)
    assert series[0].value_range != series[1].value_range
    assert series[0].value_range == (40.0, 69.0)


def test_limits_carry_risk_flags():
    scored = score_dataset(sine_dataset(50))
    (series,) = timeline_window(scored, [JointId.parse("lower_arm_right")],
                                0.0, 1.0, max_points=10)
    limits = {l.angle_deg: l.risky for l in series.limits}
    assert limits == {60.0: True, 100.0: True}
    (series,) = timeline_window(scored, [TRUNK], 0.0, 1.0, max_points=10)
    limits = {l.angle_deg: l.risky for l in series.limits}
    assert limits[60.0] is True and limits[5.0] is False


def test_bucket_risk_is_max_over_span():
    frames = [make_frame(i, angles={"trunk": 0.0 if i != 7 else 70.0})
              for i in range(20)]
    scored = score_dataset(make_dataset(frames))
    (series,) = timeline_window(scored, [TRUNK], 0.0, 20 / 30.0, max_points=2)
    assert series.buckets[0].max_risk == "medium"  # contains the 70 degree frame
    assert series.buckets[1].max_risk == "low"


def test_empty_window_errors():
    scored = score_dataset(sine_dataset(10))
    with pytest.raises(EmptyWindow):
        timeline_window(scored, [TRUNK], 5.0, 5.0, max_points=10)
    with pytest.raises(EmptyWindow):
        timeline_window(scored, [TRUNK], 100.0, 200.0, max_points=10)
    with pytest.raises(EmptyWindow):
        timeline_window(scored, [TRUNK], 0.0, 1.0, max_points=1)
