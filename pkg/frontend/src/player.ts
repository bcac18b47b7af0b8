/**
 * Plays relaxation trajectories frame by frame. Frames are always emitted
 * in order and exactly once per pass: when a tick spans several frames at
 * high speed, each intermediate frame is still delivered, so observers see
 * the full sequence.
 */

export type FrameListener = (frame: [number, number][], index: number) => void;

export class TrajectoryPlayer {
  private frames: [number, number][][] = [];
  private index = -1;
  private accumulator = 0;
  private framesPerSecond = 30;
  private running = false;
  private readonly onFrame: FrameListener;
  private readonly onDone: (() => void) | undefined;

  constructor(onFrame: FrameListener, onDone?: () => void) {
    this.onFrame = onFrame;
    this.onDone = onDone;
  }

  /** Replace the frame list and rewind; does not start playback. */
  load(frames: [number, number][][]): void {
    this.frames = frames;
    this.index = -1;
    this.accumulator = 0;
    this.running = false;
  }

  get frameCount(): number {
    return this.frames.length;
  }

  get playing(): boolean {
    return this.running;
  }

  get position(): number {
    return this.index;
  }

  setSpeed(framesPerSecond: number): void {
    if (!(framesPerSecond > 0)) throw new Error("speed must be positive");
    this.framesPerSecond = framesPerSecond;
  }

  play(): void {
    if (this.frames.length === 0) return;
    if (this.index >= this.frames.length - 1) {
      this.index = -1;
    }
    this.running = true;
  }

  pause(): void {
    this.running = false;
  }

  stop(): void {
    this.running = false;
    this.index = -1;
    this.accumulator = 0;
  }

  /** Advance by elapsed milliseconds, emitting any frames that come due. */
  tick(elapsedMs: number): void {
    if (!this.running) return;
    this.accumulator += elapsedMs;
    const interval = 1000 / this.framesPerSecond;
    while (this.accumulator >= interval || this.index < 0) {
      if (this.index >= 0) this.accumulator -= interval;
      this.index += 1;
      this.onFrame(this.frames[this.index], this.index);
      if (this.index >= this.frames.length - 1) {
        this.running = false;
        this.onDone?.();
        return;
      }
    }
  }
}

/** Stage trajectories concatenated in stage order, for flex playback. */
export function concatTrajectories(stages: { trajectory: [number, number][][] }[]): [number, number][][] {
  const frames: [number, number][][] = [];
  for (const stage of stages) frames.push(...stage.trajectory);
  return frames;
}
