/** Video playback approximation: timed stepping through frame stills. */

export interface PlaybackState {
  frames: number[];
  index: number;
  playing: boolean;
}

export function advance(state: PlaybackState): PlaybackState {
  if (!state.playing || state.frames.length === 0) return state;
  return { ...state, index: (state.index + 1) % state.frames.length };
}

export function intervalMs(fps: number): number {
  return 1000 / Math.max(fps, 1);
}
