// Workbench session state. Panels only ever display data that arrived in a
// service response tagged with a request content hash; overlapping requests
// for the same panel are resolved by keeping the newest request's result
// and dropping stale arrivals.

export interface PanelData<T> {
  hash: string;
  data: T;
}

export class SessionStore {
  private panels = new Map<string, PanelData<unknown>>();
  private pending = new Map<string, string>();
  private listeners = new Set<(panel: string) => void>();
  private sequence = 0;

  // Register intent before firing a request; returns the ticket that must
  // accompany the response for it to be accepted.
  begin(panel: string): string {
    const ticket = `${panel}#${++this.sequence}`;
    this.pending.set(panel, ticket);
    return ticket;
  }

  // Accept a response for the panel; stale tickets are ignored entirely.
  accept<T>(panel: string, ticket: string, hash: string, data: T): boolean {
    if (this.pending.get(panel) !== ticket) {
      return false;
    }
    this.pending.delete(panel);
    this.panels.set(panel, { hash, data });
    for (const listener of this.listeners) {
      listener(panel);
    }
    return true;
  }

  get<T>(panel: string): PanelData<T> | undefined {
    return this.panels.get(panel) as PanelData<T> | undefined;
  }

  // All (panel, hash) pairs currently on screen, for the debug panel.
  provenance(): Array<{ panel: string; hash: string }> {
    return [...this.panels.entries()]
      .map(([panel, { hash }]) => ({ panel, hash }))
      .sort((x, y) => (x.panel < y.panel ? -1 : 1));
  }

  subscribe(listener: (panel: string) => void): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }
}
