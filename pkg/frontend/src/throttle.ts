/**
 * Rate limiter for report requests during dragging: the wrapped function
 * fires at most once per interval, immediately on the first call and then
 * trailing with the latest arguments, so a drag gesture never exceeds one
 * request per window and always ends with the final position.
 */
export interface Throttled<A extends unknown[]> {
  (...args: A): void;
  cancel(): void;
  flush(): void;
}

export function throttle<A extends unknown[]>(
  fn: (...args: A) => void,
  intervalMs: number,
): Throttled<A> {
  let lastCall = -Infinity;
  let pending: A | null = null;
  let timer: ReturnType<typeof setTimeout> | null = null;

  const fire = (args: A) => {
    lastCall = Date.now();
    fn(...args);
  };

  const onTimer = () => {
    timer = null;
    if (pending !== null) {
      const args = pending;
      pending = null;
      fire(args);
    }
  };

  const throttled = (...args: A) => {
    const elapsed = Date.now() - lastCall;
    if (timer === null && elapsed >= intervalMs) {
      fire(args);
      return;
    }
    pending = args;
    if (timer === null) {
      timer = setTimeout(onTimer, Math.max(intervalMs - elapsed, 0));
    }
  };

  throttled.cancel = () => {
    if (timer !== null) clearTimeout(timer);
    timer = null;
    pending = null;
  };

  throttled.flush = () => {
    if (timer !== null) clearTimeout(timer);
    timer = null;
    if (pending !== null) {
      const args = pending;
      pending = null;
      fire(args);
    }
  };

  return throttled;
}
