/** Piecewise-linear magnifier for the timeline's horizontal axis.
 *
 * The user picks a focus time range and the fraction of the view width it
 * should occupy. The remaining width is split between the outer segments
 * in proportion to their time spans, so when the requested fraction equals
 * the focus range's natural share of the domain the mapping degenerates to
 * the plain linear scale (identity case). Fractions above the natural
 * share enlarge the focus; below it, compress.
 */
export interface MagnifierSpec {
  focus0: number;
  focus1: number;
  /** share of the view width given to the focus range, in (0, 1) */
  widthFraction: number;
}

export interface TimeScale {
  toX(t: number): number;
  toT(x: number): number;
  domain: [number, number];
  width: number;
  spec: MagnifierSpec | null;
}

export function linearScale(t0: number, t1: number, width: number): TimeScale {
  const span = t1 - t0;
  return {
    domain: [t0, t1],
    width,
    spec: null,
    toX: (t) => ((t - t0) / span) * width,
    toT: (x) => t0 + (x / width) * span,
  };
}

export function naturalFraction(t0: number, t1: number, spec: MagnifierSpec): number {
  return (spec.focus1 - spec.focus0) / (t1 - t0);
}

export function magnifierScale(t0: number, t1: number, width: number,
                               spec: MagnifierSpec | null): TimeScale {
  if (!spec) return linearScale(t0, t1, width);
  const f0 = Math.max(t0, Math.min(spec.focus0, t1));
  const f1 = Math.max(f0, Math.min(spec.focus1, t1));
  if (f1 <= f0 || spec.widthFraction <= 0 || spec.widthFraction >= 1) {
    return linearScale(t0, t1, width);
  }
  const leftSpan = f0 - t0;
  const rightSpan = t1 - f1;
  const outerSpan = leftSpan + rightSpan;
  const focusPx = spec.widthFraction * width;
  const outerPx = width - focusPx;
  const leftPx = outerSpan > 0 ? outerPx * (leftSpan / outerSpan) : 0;
  const rightPx = outerPx - leftPx;

  // breakpoints: (time, pixel) pairs of an increasing piecewise-linear map
  const stops: [number, number][] = [[t0, 0], [f0, leftPx],
                                     [f1, leftPx + focusPx], [t1, width]];

  const toX = (t: number): number => {
    for (let i = 1; i < stops.length; i++) {
      const [ta, xa] = stops[i - 1];
      const [tb, xb] = stops[i];
      if (t <= tb || i === stops.length - 1) {
        if (tb === ta) continue;
        return xa + ((t - ta) / (tb - ta)) * (xb - xa);
      }
    }
    return width;
  };
  const toT = (x: number): number => {
    for (let i = 1; i < stops.length; i++) {
      const [ta, xa] = stops[i - 1];
      const [tb, xb] = stops[i];
      if (x <= xb || i === stops.length - 1) {
        if (xb === xa) continue;
        return ta + ((x - xa) / (xb - xa)) * (tb - ta);
      }
    }
    return t1;
  };
  return { domain: [t0, t1], width, spec, toX, toT };
}
