import { readFileSync } from "node:fs";
import { join } from "node:path";

import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { App } from "../src/app.js";
import { FakeBackend, synset } from "./fake-backend.js";

// vitest runs with the frontend directory as cwd; the real page markup is
// loaded so the tests exercise the shipped ids and layout.
const PAGE = readFileSync(join(process.cwd(), "index.html"), "utf-8");

const PICTURES = ["A001.bmp", "A002.bmp", "P031.bmp", "P032.bmp", "P033.bmp", "Sp160.bmp"];

const SYNSETS = [
  synset("n00000010", "noun", "dog", "a domesticated canid"),
  synset("n00000020", "noun", "dogma", "a doctrine held as authoritative"),
  synset("n00000025", "noun", "fig", "fleshy sweet fruit"),
  synset("v00000030", "verb", "fly", "travel through the air"),
  synset("a00000040", "adjective", "flying", "moving swiftly"),
  synset("r00000050", "adverb", "doggedly", "with obstinate determination"),
];

function gate() {
  let release!: () => void;
  const promise = new Promise<void>((resolve) => (release = resolve));
  return { promise, release };
}

async function flush(times = 4): Promise<void> {
  for (let i = 0; i < times; i += 1) {
    await new Promise((resolve) => setTimeout(resolve, 0));
  }
}

function el<T extends HTMLElement>(id: string): T {
  return document.getElementById(id) as T;
}

async function mount(backend: FakeBackend): Promise<App> {
  document.documentElement.innerHTML = PAGE;
  const app = new App(document, new ApiClient(backend.fetch), {
    debounceMs: 0,
    noticeMs: 600_000,
  });
  await app.init();
  await flush();
  return app;
}

function makeBackend(): FakeBackend {
  return new FakeBackend(PICTURES, SYNSETS);
}

async function typeSearch(query: string): Promise<void> {
  const input = el<HTMLInputElement>("wordnet-search");
  input.value = query;
  input.dispatchEvent(new Event("input", { bubbles: true }));
  await flush();
}

describe("bootstrap", () => {
  it("loads and shows the first picture with its annotations", async () => {
    const backend = makeBackend();
    await mount(backend);
    expect(el("picture-name").textContent).toBe("A001.bmp");
    expect(backend.requestsFor("/api/pictures/first")).toHaveLength(1);
    expect(backend.requestsFor("/api/pictures/A001.bmp/annotations")).toHaveLength(1);
    expect(el("annotation-list").textContent).toContain("No annotations yet");
  });

  it("keeps the animated placeholder when the image endpoint has no bytes", async () => {
    const backend = makeBackend();
    await mount(backend);
    el<HTMLImageElement>("picture-image").dispatchEvent(new Event("error"));
    expect(el("picture-placeholder").classList.contains("hidden")).toBe(false);
    expect(el("picture-image").classList.contains("hidden")).toBe(true);
  });

  it("shows a full-page error when the catalog is empty", async () => {
    const backend = new FakeBackend([], SYNSETS);
    await mount(backend);
    const notice = el("notice");
    expect(notice.classList.contains("hidden")).toBe(false);
    expect(notice.classList.contains("fatal")).toBe(true);
  });
});

describe("picture search box", () => {
  it("issues no request while typing", async () => {
    const backend = makeBackend();
    await mount(backend);
    const before = backend.requests.length;
    const input = el<HTMLInputElement>("picture-search");
    for (const char of "P033.bmp") {
      input.value += char;
      input.dispatchEvent(new Event("input", { bubbles: true }));
      input.dispatchEvent(new KeyboardEvent("keydown", { key: char, bubbles: true }));
    }
    await flush();
    expect(backend.requests.length).toBe(before);
  });

  it("loads the picture on Enter", async () => {
    const backend = makeBackend();
    await mount(backend);
    el<HTMLInputElement>("picture-search").value = "P033.bmp";
    el<HTMLFormElement>("picture-search-form").dispatchEvent(
      new Event("submit", { bubbles: true, cancelable: true }),
    );
    await flush();
    expect(el("picture-name").textContent).toBe("P033.bmp");
    expect(backend.requestsFor("/api/pictures/P033.bmp/annotations")).toHaveLength(1);
  });

  it("shows a not-found notice and keeps the display unchanged", async () => {
    const backend = makeBackend();
    await mount(backend);
    el<HTMLInputElement>("picture-search").value = "P033"; // extension missing
    el<HTMLFormElement>("picture-search-form").dispatchEvent(
      new Event("submit", { bubbles: true, cancelable: true }),
    );
    await flush();
    expect(el("picture-name").textContent).toBe("A001.bmp");
    const notice = el("notice");
    expect(notice.classList.contains("hidden")).toBe(false);
    expect(notice.textContent).toContain("cannot be found");
  });
});

describe("navigation buttons", () => {
  it("all four carry tooltips", async () => {
    await mount(makeBackend());
    for (const id of ["nav-first", "nav-prev", "nav-next", "nav-last"]) {
      expect(el(id).title.length).toBeGreaterThan(0);
    }
  });

  it("steps and wraps around both ends", async () => {
    const backend = makeBackend();
    await mount(backend);
    el("nav-prev").click(); // wraps from first to last
    await flush();
    expect(el("picture-name").textContent).toBe("Sp160.bmp");
    el("nav-next").click();
    await flush();
    expect(el("picture-name").textContent).toBe("A001.bmp");
    el("nav-last").click();
    await flush();
    expect(el("picture-name").textContent).toBe("Sp160.bmp");
    el("nav-first").click();
    await flush();
    expect(el("picture-name").textContent).toBe("A001.bmp");
  });

  it("pressing < twice from P033 reaches P031", async () => {
    const backend = makeBackend();
    await mount(backend);
    el<HTMLInputElement>("picture-search").value = "P033.bmp";
    el<HTMLFormElement>("picture-search-form").dispatchEvent(
      new Event("submit", { bubbles: true, cancelable: true }),
    );
    await flush();
    el("nav-prev").click();
    await flush();
    expect(el("picture-name").textContent).toBe("P032.bmp");
    el("nav-prev").click();
    await flush();
    expect(el("picture-name").textContent).toBe("P031.bmp");
  });
});

describe("synset search panel", () => {
  it("renders grouped results, nouns first", async () => {
    const backend = makeBackend();
    await mount(backend);
    await typeSearch("d");
    const headings = [...el("search-results").querySelectorAll("h3")].map((h) => h.textContent);
    expect(headings).toEqual(["nouns", "adverbs"]);
    const rows = [...el("search-results").querySelectorAll(".result-row")];
    expect(rows.map((row) => (row as HTMLElement).dataset.synsetId)).toEqual([
      "n00000010",
      "n00000020",
      "r00000050",
    ]);
    expect(rows[0]?.textContent).toContain("dog");
    expect(rows[0]?.textContent).toContain("a domesticated canid");
  });

  it("shows the busy icon exactly while a search is in flight", async () => {
    const backend = makeBackend();
    const app = await mount(backend);
    const { promise, release } = gate();
    backend.beforeRequest = (method, path) =>
      method === "GET" && path === "/api/search" ? promise : Promise.resolve();
    await typeSearch("fly");
    expect(app.busy).toBe(true);
    expect(el("search-busy").classList.contains("hidden")).toBe(false);
    release();
    await flush();
    expect(app.busy).toBe(false);
    expect(el("search-busy").classList.contains("hidden")).toBe(true);
    expect(el("search-results").textContent).toContain("travel through the air");
  });

  it("clears the panel without a request when the box is emptied", async () => {
    const backend = makeBackend();
    await mount(backend);
    await typeSearch("dog");
    expect(el("search-results").querySelectorAll(".result-row").length).toBeGreaterThan(0);
    const before = backend.requests.length;
    await typeSearch("   ");
    expect(el("search-results").childElementCount).toBe(0);
    expect(backend.requests.length).toBe(before);
  });

  it("emptying the box before the debounce fires disarms the queued search", async () => {
    const backend = makeBackend();
    await mount(backend);
    const input = el<HTMLInputElement>("wordnet-search");
    const before = backend.requestsFor("/api/search").length;
    input.value = "d";
    input.dispatchEvent(new Event("input", { bubbles: true }));
    input.value = ""; // cleared before the debounce timer runs
    input.dispatchEvent(new Event("input", { bubbles: true }));
    await flush();
    expect(backend.requestsFor("/api/search").length).toBe(before);
    expect(el("search-results").childElementCount).toBe(0);
  });

  it("never renders a stale response over a newer one", async () => {
    const backend = makeBackend();
    await mount(backend);
    const gates = new Map<string, { promise: Promise<void>; release: () => void }>();
    gates.set("f", gate());
    gates.set("fly", gate());
    backend.beforeRequest = (method, path, url) => {
      if (path === "/api/search") {
        return gates.get(url.searchParams.get("q") ?? "")?.promise ?? Promise.resolve();
      }
      return Promise.resolve();
    };
    await typeSearch("f"); // matches fig, fly, flying
    await typeSearch("fly"); // matches fly, flying only
    gates.get("fly")!.release();
    await flush();
    expect(el("search-results").textContent).not.toContain("fig");
    gates.get("f")!.release(); // stale response arrives last
    await flush();
    expect(el("search-results").textContent).not.toContain("fig");
    expect(el("search-results").textContent).toContain("flying");
  });

  it("renders a no-results state", async () => {
    await mount(makeBackend());
    await typeSearch("zzzzqq");
    expect(el("search-results").textContent).toContain("No matching synsets");
  });
});

describe("attaching and removing annotations", () => {
  beforeEach(() => {
    vi.stubGlobal("confirm", () => {
      throw new Error("no confirmation dialogs are allowed");
    });
  });

  afterEach(() => {
    vi.unstubAllGlobals();
  });

  it("clicking a result row attaches to the shown picture and refreshes the list", async () => {
    const backend = makeBackend();
    const app = await mount(backend);
    await typeSearch("dog");
    el("search-results").querySelector<HTMLElement>(".result-row")!.click();
    await app.flushMutations();
    await flush();
    expect(backend.annotations.get("A001.bmp")?.has("n00000010")).toBe(true);
    const rows = el("annotation-list").querySelectorAll(".annotation-row");
    expect(rows).toHaveLength(1);
    expect(rows[0]?.textContent).toContain("dog");
  });

  it("clicking the same row again shows an already-attached notice", async () => {
    const backend = makeBackend();
    const app = await mount(backend);
    await typeSearch("dog");
    const row = el("search-results").querySelector<HTMLElement>(".result-row")!;
    row.click();
    await app.flushMutations();
    row.click();
    await app.flushMutations();
    await flush();
    expect(el("notice").textContent).toContain("already attached");
    expect(el("annotation-list").querySelectorAll(".annotation-row")).toHaveLength(1);
  });

  it("attach targets the picture shown at click time, not after navigation", async () => {
    const backend = makeBackend();
    const app = await mount(backend);
    await typeSearch("dog");
    const { promise, release } = gate();
    backend.beforeRequest = (method) => (method === "POST" ? promise : Promise.resolve());
    el("search-results").querySelector<HTMLElement>(".result-row")!.click();
    el("nav-next").click(); // navigate away while the attach is in flight
    await flush();
    expect(el("picture-name").textContent).toBe("A002.bmp");
    release();
    await app.flushMutations();
    await flush();
    expect(backend.annotations.get("A001.bmp")?.has("n00000010")).toBe(true);
    expect(backend.annotations.get("A002.bmp")).toBeUndefined();
  });

  it("the X removes immediately with no confirmation and no undo", async () => {
    const backend = makeBackend();
    backend.attachDirectly("A001.bmp", "n00000010");
    const app = await mount(backend);
    expect(el("annotation-list").querySelectorAll(".annotation-row")).toHaveLength(1);
    el("annotation-list").querySelector<HTMLElement>("button.remove")!.click();
    await app.flushMutations();
    await flush();
    expect(el("annotation-list").querySelectorAll(".annotation-row")).toHaveLength(0);
    expect(backend.annotations.get("A001.bmp")?.size ?? 0).toBe(0);
  });

  it("an X on a row already deleted elsewhere resyncs silently", async () => {
    const backend = makeBackend();
    backend.attachDirectly("A001.bmp", "n00000010");
    const app = await mount(backend);
    backend.annotations.get("A001.bmp")!.clear(); // deleted in another tab
    el("annotation-list").querySelector<HTMLElement>("button.remove")!.click();
    await app.flushMutations();
    await flush();
    expect(el("annotation-list").querySelectorAll(".annotation-row")).toHaveLength(0);
    expect(el("notice").classList.contains("hidden")).toBe(true);
  });

  it("a failing mutation does not wedge the queue for later clicks", async () => {
    const backend = makeBackend();
    const app = await mount(backend);
    await typeSearch("dog");
    const row = el("search-results").querySelector<HTMLElement>(".result-row")!;
    let failNext = true;
    backend.beforeRequest = (method) => {
      if (method === "POST" && failNext) {
        failNext = false;
        return Promise.reject(new Error("connection dropped"));
      }
      return Promise.resolve();
    };
    row.click(); // rejected fetch
    await app.flushMutations();
    await flush();
    expect(el("notice").textContent).toContain("connection dropped");
    row.click(); // queue must still work
    await app.flushMutations();
    await flush();
    expect(backend.annotations.get("A001.bmp")?.has("n00000010")).toBe(true);
  });

  it("re-searching and re-clicking after removal attaches again", async () => {
    const backend = makeBackend();
    const app = await mount(backend);
    await typeSearch("dogma");
    el("search-results").querySelector<HTMLElement>(".result-row")!.click();
    await app.flushMutations();
    await flush();
    el("annotation-list").querySelector<HTMLElement>("button.remove")!.click();
    await app.flushMutations();
    await flush();
    expect(el("annotation-list").querySelectorAll(".annotation-row")).toHaveLength(0);
    await typeSearch("dogma");
    el("search-results").querySelector<HTMLElement>(".result-row")!.click();
    await app.flushMutations();
    await flush();
    expect(el("annotation-list").querySelectorAll(".annotation-row")).toHaveLength(1);
  });
});
