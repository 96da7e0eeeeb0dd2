/** Thin typed wrapper over the annotation service's four endpoints. */
import type {
  ConflictDetail,
  EventKind,
  EventResponse,
  ExportResponse,
  ItemState,
  NextItemResponse,
} from './types.js';

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: unknown,
  ) {
    super(`service returned ${status}: ${JSON.stringify(detail)}`);
  }
}

/** 409: the transition was illegal; carries the service's current state
 * so the caller can re-sync instead of guessing. */
export class ConflictError extends ApiError {
  constructor(public readonly conflict: ConflictDetail) {
    super(409, conflict);
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: typeof fetch = fetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    const body = (await res.json()) as Record<string, unknown>;
    if (!res.ok) {
      const detail = body['detail'];
      if (
        res.status === 409 &&
        typeof detail === 'object' &&
        detail !== null &&
        'state' in detail
      ) {
        throw new ConflictError(detail as ConflictDetail);
      }
      throw new ApiError(res.status, detail ?? body);
    }
    return body as T;
  }

  nextItem(expert: string): Promise<NextItemResponse> {
    return this.request(`/item/next?expert=${encodeURIComponent(expert)}`);
  }

  submitEvent(
    expertId: string,
    imageId: string,
    kind: EventKind,
    payload: Record<string, unknown> = {},
  ): Promise<EventResponse> {
    return this.request('/event', {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({
        expert_id: expertId,
        image_id: imageId,
        kind,
        payload,
      }),
    });
  }

  async state(imageId: string): Promise<ItemState> {
    const res = await this.request<{ state: ItemState }>(
      `/state/${encodeURIComponent(imageId)}`,
    );
    return res.state;
  }

  exportBundles(): Promise<ExportResponse> {
    return this.request('/export');
  }
}
