import { describe, expect, it } from "vitest";

import { linearScale, magnifierScale, naturalFraction } from "../src/magnifier.js";

const W = 960;

describe("magnifier mapping", () => {
  it("identity case: width fraction equal to the natural share is the linear scale", () => {
    const spec = { focus0: 40, focus1: 70, widthFraction: naturalFraction(0, 120, {
      focus0: 40, focus1: 70, widthFraction: 0 }) };
    const mag = magnifierScale(0, 120, W, spec);
    const lin = linearScale(0, 120, W);
    for (let t = 0; t <= 120; t += 0.5) {
      expect(mag.toX(t)).toBeCloseTo(lin.toX(t), 9);
    }
  });

  it("round-trips pixel to time in both enlarge and compress directions", () => {
    for (const widthFraction of [0.7, 0.1]) {
      const scale = magnifierScale(0, 100, W, { focus0: 20, focus1: 40, widthFraction });
      for (let t = 0; t <= 100; t += 0.25) {
        expect(scale.toT(scale.toX(t))).toBeCloseTo(t, 8);
      }
      for (let x = 0; x <= W; x += 7.3) {
        expect(scale.toX(scale.toT(x))).toBeCloseTo(x, 8);
      }
    }
  });

  it("is monotone and hits the endpoints", () => {
    const scale = magnifierScale(10, 50, W, { focus0: 25, focus1: 30, widthFraction: 0.6 });
    expect(scale.toX(10)).toBeCloseTo(0);
    expect(scale.toX(50)).toBeCloseTo(W);
    let prev = -1;
    for (let t = 10; t <= 50; t += 0.1) {
      const x = scale.toX(t);
      expect(x).toBeGreaterThanOrEqual(prev);
      prev = x;
    }
  });

  it("enlarging gives the focus more pixels; compressing fewer", () => {
    const natural = naturalFraction(0, 100, { focus0: 20, focus1: 40, widthFraction: 0 });
    const wide = magnifierScale(0, 100, W, { focus0: 20, focus1: 40, widthFraction: 0.8 });
    const narrow = magnifierScale(0, 100, W, { focus0: 20, focus1: 40, widthFraction: 0.05 });
    const widePx = wide.toX(40) - wide.toX(20);
    const narrowPx = narrow.toX(40) - narrow.toX(20);
    expect(widePx).toBeGreaterThan(natural * W);
    expect(narrowPx).toBeLessThan(natural * W);
    expect(widePx).toBeCloseTo(0.8 * W, 6);
    expect(narrowPx).toBeCloseTo(0.05 * W, 6);
  });

  it("handles a focus pinned to the domain edge", () => {
    const scale = magnifierScale(0, 100, W, { focus0: 0, focus1: 10, widthFraction: 0.5 });
    expect(scale.toX(0)).toBeCloseTo(0);
    expect(scale.toX(10)).toBeCloseTo(W / 2);
    expect(scale.toX(100)).toBeCloseTo(W);
    expect(scale.toT(W / 4)).toBeCloseTo(5);
  });

  it("degenerate or absent specs fall back to linear", () => {
    const lin = linearScale(0, 10, W);
    for (const spec of [null,
                        { focus0: 5, focus1: 5, widthFraction: 0.5 },
                        { focus0: 2, focus1: 8, widthFraction: 0 }]) {
      const scale = magnifierScale(0, 10, W, spec);
      expect(scale.toX(3)).toBeCloseTo(lin.toX(3));
    }
  });
});
