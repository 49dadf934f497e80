/**
 * Typed client for the decision-service JSON API.
 * All dashboard numbers come from these endpoints; the client performs no
 * risk computation of its own.
 */

import type {
  DistributionPayload,
  JobInfo,
  JobRef,
  MetricName,
  MetricsPayload,
  ScenarioRequest,
  WhatIfSolution,
} from './types.js';

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const resp = await fetch(url, init);
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      const body = await resp.json();
      detail = typeof body.detail === 'string' ? body.detail : JSON.stringify(body.detail ?? body);
    } catch {
      /* non-JSON error body */
    }
    throw new ApiError(detail, resp.status);
  }
  return (await resp.json()) as T;
}

export class ApiClient {
  constructor(private readonly baseUrl: string = '') {}

  private url(path: string): string {
    return `${this.baseUrl}${path}`;
  }

  async health(): Promise<boolean> {
    try {
      const body = await request<{ status: string }>(this.url('/api/health'));
      return body.status === 'ok';
    } catch {
      return false;
    }
  }

  createScenario(req: ScenarioRequest): Promise<JobRef> {
    return request<JobRef>(this.url('/api/scenarios'), {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(req),
    });
  }

  getJob(id: string): Promise<JobInfo> {
    return request<JobInfo>(this.url(`/api/scenarios/${id}`));
  }

  getMetrics(id: string): Promise<MetricsPayload> {
    return request<MetricsPayload>(this.url(`/api/scenarios/${id}/metrics`));
  }

  getDistribution(id: string, metric: MetricName): Promise<DistributionPayload> {
    return request<DistributionPayload>(this.url(`/api/scenarios/${id}/distributions/${metric}`));
  }

  whatIf(id: string, conePerMwYear: number, vollPerMwh: number): Promise<WhatIfSolution> {
    return request<WhatIfSolution>(this.url(`/api/scenarios/${id}/whatif`), {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ cone_per_mw_year: conePerMwYear, voll_per_mwh: vollPerMwh }),
    });
  }

  /** Poll a job until done/failed; `isStale` aborts a superseded poll loop. */
  async waitForJob(
    id: string,
    opts: { intervalMs?: number; timeoutMs?: number; isStale?: () => boolean } = {},
  ): Promise<JobInfo> {
    const interval = opts.intervalMs ?? 250;
    const deadline = Date.now() + (opts.timeoutMs ?? 300_000);
    for (;;) {
      const info = await this.getJob(id);
      if (opts.isStale?.()) throw new ApiError('superseded by a newer request', 0);
      if (info.status === 'done' || info.status === 'failed') return info;
      if (Date.now() > deadline) throw new ApiError(`job ${id} timed out`, 0);
      await new Promise((r) => setTimeout(r, interval));
    }
  }
}
