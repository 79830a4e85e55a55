/** Typed client for /api/v1 — thin wrapper around fetch. */

import type {
  ApiErrorPayload,
  ElementForest,
  ElementRef,
  InstanceListing,
  LinkDetail,
  LinkRecord,
  LinkSummary,
  PopulationReport,
  ProviderInstance,
  TableEntry,
} from './types';

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
    public readonly details?: unknown,
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

export class ApiClient {
  token: string | null = null;

  constructor(private readonly base: string = '') {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = { Accept: 'application/json' };
    if (body !== undefined) headers['Content-Type'] = 'application/json';
    if (this.token) headers['Authorization'] = `Bearer ${this.token}`;
    let response: Response;
    try {
      response = await fetch(`${this.base}/api/v1${path}`, {
        method,
        headers,
        body: body !== undefined ? JSON.stringify(body) : undefined,
      });
    } catch (cause) {
      throw new ApiError(0, 'network_error', `cannot reach the service: ${cause}`);
    }
    if (!response.ok) {
      let payload: Partial<ApiErrorPayload> = {};
      try {
        payload = (await response.json()) as ApiErrorPayload;
      } catch {
        /* non-JSON error body */
      }
      throw new ApiError(
        response.status,
        payload.code ?? 'request_failed',
        payload.message ?? `request failed with status ${response.status}`,
        payload.details,
      );
    }
    if (response.status === 204) return undefined as T;
    return (await response.json()) as T;
  }

  async login(username: string, password: string, instanceId?: string): Promise<string> {
    const result = await this.request<{ token: string }>('POST', '/login', {
      username,
      password,
      instance_id: instanceId ?? null,
    });
    this.token = result.token;
    return result.token;
  }

  async logout(): Promise<void> {
    await this.request<void>('POST', '/logout');
    this.token = null;
  }

  instances(): Promise<InstanceListing> {
    return this.request('GET', '/instances');
  }

  createInstance(form: {
    display_name: string;
    kind: string;
    host: string;
    api_key?: string;
  }): Promise<ProviderInstance> {
    return this.request('POST', '/instances', form);
  }

  deleteInstance(instanceId: string, cascade = false): Promise<void> {
    return this.request('DELETE', `/instances/${instanceId}?cascade=${cascade}`);
  }

  elements(instanceId: string): Promise<ElementForest> {
    return this.request('GET', `/instances/${instanceId}/elements`);
  }

  links(): Promise<{ links: LinkSummary[] }> {
    return this.request('GET', '/links');
  }

  createLink(endpoints: ElementRef[]): Promise<LinkRecord> {
    return this.request('POST', '/links', { endpoints });
  }

  linkDetail(linkId: string): Promise<LinkDetail> {
    return this.request('GET', `/links/${linkId}`);
  }

  deleteLink(linkId: string): Promise<void> {
    return this.request('DELETE', `/links/${linkId}`);
  }

  linkTables(linkId: string): Promise<{ tables: TableEntry[] }> {
    return this.request('GET', `/links/${linkId}/tables`);
  }

  populate(linkId: string, tableIndex: number, target: ElementRef): Promise<PopulationReport> {
    return this.request('POST', `/links/${linkId}/populate`, {
      table_index: tableIndex,
      target,
    });
  }
}
