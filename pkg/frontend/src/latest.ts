/** Latest-wins guard: at most one in-flight refresh result is applied per
 *  view; stale responses resolve to null and are dropped by the caller. */
export class LatestWins {
  private seq = 0;

  async run<T>(task: () => Promise<T>): Promise<T | null> {
    const ticket = ++this.seq;
    const result = await task();
    return ticket === this.seq ? result : null;
  }
}
