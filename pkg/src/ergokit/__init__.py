"""Ergonomic posture-risk analysis toolkit.

Scores per-frame joint angles through the standard whole-body assessment
tables, aggregates them into the structures behind linked analysis views
(augmented score tables, angular gauges, decimated timelines,
representative frames), and evaluates declarative brush selections.
"""
from .model import (
    BodyPart,
    Coupling,
    Dataset,
    FilterPolicy,
    FrameRecord,
    JointId,
    Side,
    Violation,
    SCORED_JOINTS,
)
from .tables import ScoringAsset, ScoreTable, default_asset, load_asset
from .scoring import (
    ActivityContext,
    FramePostureScores,
    JointScore,
    ScoredDataset,
    action_level,
    frame_reba,
    joint_score_from_angle,
    score_dataset,
)
from .ingest import load_dataset, write_frames_csv
from .filters import filter_outliers, validate_frame
from .aggregate import (
    GaugeSeries,
    Heatmap,
    HierarchicalHistogram,
    TableAggregate,
    gauge_distribution,
    representative_frames,
    table_aggregate,
    timeline_window,
)
from .brushes import (
    AngleRangeBrush,
    Brush,
    BrushSet,
    FrameIdSet,
    HeatmapCellBrush,
    ScoreBinBrush,
    TimeRangeBrush,
    evaluate_brush,
    evaluate_composite,
    linked_counts,
)
from .synth import build_frames, generate_synthetic

__version__ = "0.1.0"
