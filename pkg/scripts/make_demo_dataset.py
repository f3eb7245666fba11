#!/usr/bin/env python3
"""Generate the demo recording (cyclic painting-like task) into ./data.

Writes manifest + frames CSV + one stub image per frame, then prints the
serve command. Images are small colored tiles labeled with the frame index
so the key-frame strip and image endpoint have something real to show.
"""
import argparse
import json
import math
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from ergokit.synth import build_frames  # noqa: E402
from ergokit.ingest import write_frames_csv, write_manifest  # noqa: E402

DEMO_SPEC = {
    "id": "painting-demo",
    "duration_s": 120, "fps": 30, "noise_deg": 0, "period_s": 12,
    "joints": {
        "trunk": {"baseline_deg": 28, "amplitude_deg": 38},
        "neck": {"baseline_deg": 8, "amplitude_deg": 16},
        "upper_arm_right": {"baseline_deg": 45, "amplitude_deg": 48},
        "lower_arm_right": {"baseline_deg": 75, "amplitude_deg": 35},
        "wrist_right": {"baseline_deg": 5, "amplitude_deg": 18},
        "upper_arm_left": {"baseline_deg": 15, "amplitude_deg": 15},
        "lower_arm_left": {"baseline_deg": 80, "amplitude_deg": 10},
        "wrist_left": {"baseline_deg": 5, "amplitude_deg": 8},
        "leg_left": {"baseline_deg": 20, "amplitude_deg": 18},
        "leg_right": {"baseline_deg": 20, "amplitude_deg": 18, "phase_deg": 10},
    },
    "load_kg": 3,
    "load_windows": [{"t0": 0, "t1": 24, "load_kg": 12}],
    "coupling": "fair",
    "image_refs": True,
}


def render_images(frames, out_dir, period_s):
    try:
        from PIL import Image, ImageDraw
    except ImportError:
        print("Pillow not installed; skipping image rendering", file=sys.stderr)
        return 0
    img_dir = out_dir / "images"
    img_dir.mkdir(exist_ok=True)
    for f in frames:
        phase = (f.timestamp_s % period_s) / period_s
        hue = int(40 + 180 * phase)
        img = Image.new("RGB", (160, 120), (hue, 90, 200 - hue // 2))
        draw = ImageDraw.Draw(img)
        draw.rectangle([8, 8, 152, 112], outline=(255, 255, 255))
        draw.text((16, 16), f"frame {f.frame_index}", fill=(255, 255, 255))
        draw.text((16, 40), f"t = {f.timestamp_s:.2f}s", fill=(255, 255, 255))
        img.save(out_dir / f.image_ref)
    return len(frames)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data/painting-demo")
    parser.add_argument("--seed", type=int, default=20)
    parser.add_argument("--duration", type=float, default=None)
    args = parser.parse_args()

    spec = dict(DEMO_SPEC)
    if args.duration:
        spec["duration_s"] = args.duration
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    frames = build_frames(spec, seed=args.seed)
    write_frames_csv(frames, out / "frames.csv")
    write_manifest(out / "manifest.json", spec["id"], "frames.csv", spec["fps"],
                   images_dir=".", meta={"generator": "demo", "seed": args.seed})
    n_images = render_images(frames, out, spec["period_s"])
    print(f"wrote {len(frames)} frames ({n_images} images) to {out}")
    print(f"serve with: ergokit serve --data {out.parent}")


if __name__ == "__main__":
    main()
