/**
 * Typed client for the phax service. Every method maps to exactly one
 * documented endpoint; errors carry the service's {code, message} body.
 */

import type {
  ArgumentsReport,
  ChallengeResponse,
  CreateTheoryResponse,
  ExplainResponse,
  ExtensionsReport,
  SchemesReport,
  ServiceError,
  UtilityWeightsOverride,
  WhatifResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public body: ServiceError,
  ) {
    super(body.message || `request failed with status ${status}`);
  }
}

async function parseJson(response: Response): Promise<unknown> {
  const text = await response.text();
  try {
    return text ? JSON.parse(text) : {};
  } catch {
    return { code: "bad_response", message: text };
  }
}

async function expectOk<T>(response: Response): Promise<T> {
  const body = await parseJson(response);
  if (!response.ok) {
    throw new ApiError(response.status, body as ServiceError);
  }
  return body as T;
}

export class ApiClient {
  constructor(private baseUrl: string) {}

  async createTheory(source: string): Promise<CreateTheoryResponse> {
    const response = await fetch(`${this.baseUrl}/api/theory`, {
      method: "POST",
      headers: { "content-type": "text/plain; charset=utf-8" },
      body: source,
    });
    return expectOk(response);
  }

  async getArguments(sessionId: string): Promise<ArgumentsReport> {
    const response = await fetch(
      `${this.baseUrl}/api/theory/${sessionId}/arguments`,
    );
    return expectOk(response);
  }

  async getExtensions(
    sessionId: string,
    semantics: string,
  ): Promise<ExtensionsReport> {
    const url = new URL(`${this.baseUrl}/api/theory/${sessionId}/extensions`);
    url.searchParams.set("semantics", semantics);
    const response = await fetch(url);
    return expectOk(response);
  }

  async explain(
    sessionId: string,
    request: {
      target: string;
      profile: string | Record<string, unknown>;
      weights?: UtilityWeightsOverride;
      semantics?: string;
      format?: string;
    },
  ): Promise<ExplainResponse> {
    const response = await fetch(
      `${this.baseUrl}/api/theory/${sessionId}/explain`,
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(request),
      },
    );
    return expectOk(response);
  }

  async challenge(
    sessionId: string,
    request: { instance: string; cq: string; confidence: number; semantics?: string },
  ): Promise<ChallengeResponse> {
    const response = await fetch(
      `${this.baseUrl}/api/theory/${sessionId}/challenge`,
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(request),
      },
    );
    return expectOk(response);
  }

  async whatif(
    sessionId: string,
    request: {
      disable_premises?: string[];
      add_preferences?: [string, string][];
      remove_preferences?: [string, string][];
      target?: string;
      semantics?: string;
      commit?: boolean;
    },
  ): Promise<WhatifResponse> {
    const response = await fetch(
      `${this.baseUrl}/api/theory/${sessionId}/whatif`,
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(request),
      },
    );
    return expectOk(response);
  }

  async getSchemes(): Promise<SchemesReport> {
    const response = await fetch(`${this.baseUrl}/api/schemes`);
    return expectOk(response);
  }
}
