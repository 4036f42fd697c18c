// Debounced runner for live checking: edits flow in at keystroke speed,
// the checker runs once things settle.  One pending timer at a time; each
// schedule supersedes the last.

export class Debouncer {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private seq = 0;

  constructor(private readonly run: () => void | Promise<void>,
              readonly delayMs = 300) {}

  schedule(): void {
    this.seq += 1;
    const mine = this.seq;
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      if (mine === this.seq) void this.run();
    }, this.delayMs);
  }

  /** Run now, dropping any pending schedule. */
  flush(): void | Promise<void> {
    this.seq += 1;
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    return this.run();
  }

  cancel(): void {
    this.seq += 1;
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
  }

  get pending(): boolean {
    return this.timer !== null;
  }
}
