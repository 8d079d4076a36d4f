import type {
  AnnotationListing,
  CreatedAnnotation,
  PictureDescriptor,
  SearchPage,
} from "./types.js";

export class ApiError extends Error {
  readonly status: number;
  readonly errorCode: string;

  constructor(status: number, errorCode: string, message: string) {
    super(message);
    this.status = status;
    this.errorCode = errorCode;
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Thin typed client over the JSON API. */
export class ApiClient {
  private readonly fetchFn: FetchLike;
  private readonly base: string;

  constructor(fetchFn?: FetchLike, base = "") {
    // Bind so a bare window.fetch keeps its receiver.
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
    this.base = base;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.base + path, init);
    if (!response.ok) {
      let code = "unknown_error";
      let message = `request failed with status ${response.status}`;
      try {
        const body = (await response.json()) as { error_code?: string; message?: string };
        code = body.error_code ?? code;
        message = body.message ?? message;
      } catch {
        // tolerate non-JSON error bodies
      }
      throw new ApiError(response.status, code, message);
    }
    return (await response.json()) as T;
  }

  firstPicture(): Promise<PictureDescriptor> {
    return this.request("/api/pictures/first");
  }

  lastPicture(): Promise<PictureDescriptor> {
    return this.request("/api/pictures/last");
  }

  picture(name: string): Promise<PictureDescriptor> {
    return this.request(`/api/pictures/${encodeURIComponent(name)}`);
  }

  nextPicture(name: string): Promise<PictureDescriptor> {
    return this.request(`/api/pictures/${encodeURIComponent(name)}/next`);
  }

  prevPicture(name: string): Promise<PictureDescriptor> {
    return this.request(`/api/pictures/${encodeURIComponent(name)}/prev`);
  }

  annotations(name: string): Promise<AnnotationListing> {
    return this.request(`/api/pictures/${encodeURIComponent(name)}/annotations`);
  }

  search(query: string): Promise<SearchPage> {
    return this.request(`/api/search?q=${encodeURIComponent(query)}`);
  }

  attach(picture: string, synset: string): Promise<CreatedAnnotation> {
    return this.request("/api/annotations", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ picture, synset }),
    });
  }

  detach(picture: string, synset: string): Promise<void> {
    return this.request(
      `/api/annotations/${encodeURIComponent(picture)}/${encodeURIComponent(synset)}`,
      { method: "DELETE" },
    );
  }

  imageUrl(name: string): string {
    return `${this.base}/api/pictures/${encodeURIComponent(name)}/image`;
  }
}
