import { ApiClient, ApiError } from "./api.js";
import { debounce } from "./debounce.js";
import type { AnnotationListing, SearchPage } from "./types.js";

export interface AppOptions {
  /** Delay before a keystroke actually queries the synset search. */
  debounceMs?: number;
  /** How long transient notices stay visible. */
  noticeMs?: number;
}

function byId<T extends HTMLElement>(root: Document, id: string): T {
  const el = root.getElementById(id);
  if (!el) {
    throw new Error(`missing element #${id}`);
  }
  return el as T;
}

/**
 * The single-page annotation client.
 *
 * One picture is shown at a time with its server-side annotation listing;
 * the synset search panel queries on (debounced) keystrokes and attaches on
 * row click. All listing renders mirror the server response verbatim.
 */
export class App {
  private readonly api: ApiClient;
  private readonly noticeMs: number;

  private readonly pictureName: HTMLElement;
  private readonly pictureImage: HTMLImageElement;
  private readonly picturePlaceholder: HTMLElement;
  private readonly pictureSearchForm: HTMLFormElement;
  private readonly pictureSearchInput: HTMLInputElement;
  private readonly annotationList: HTMLElement;
  private readonly searchInput: HTMLInputElement;
  private readonly searchBusy: HTMLElement;
  private readonly searchResults: HTMLElement;
  private readonly noticeBox: HTMLElement;

  private current: string | null = null;
  private searchSeq = 0;
  private busyCount = 0;
  /** Annotation mutations run one at a time, in click order. */
  private mutationQueue: Promise<void> = Promise.resolve();
  private noticeTimer: ReturnType<typeof setTimeout> | undefined;

  constructor(root: Document, api: ApiClient, options: AppOptions = {}) {
    this.api = api;
    this.noticeMs = options.noticeMs ?? 2500;

    this.pictureName = byId(root, "picture-name");
    this.pictureImage = byId<HTMLImageElement>(root, "picture-image");
    this.picturePlaceholder = byId(root, "picture-placeholder");
    this.pictureSearchForm = byId<HTMLFormElement>(root, "picture-search-form");
    this.pictureSearchInput = byId<HTMLInputElement>(root, "picture-search");
    this.annotationList = byId(root, "annotation-list");
    this.searchInput = byId<HTMLInputElement>(root, "wordnet-search");
    this.searchBusy = byId(root, "search-busy");
    this.searchResults = byId(root, "search-results");
    this.noticeBox = byId(root, "notice");

    this.pictureImage.addEventListener("load", () => {
      this.picturePlaceholder.classList.add("hidden");
      this.pictureImage.classList.remove("hidden");
    });
    this.pictureImage.addEventListener("error", () => {
      // No picture bytes (manifest mode): keep the animated placeholder.
      this.pictureImage.classList.add("hidden");
      this.picturePlaceholder.classList.remove("hidden");
    });

    this.pictureSearchForm.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.searchPicture(this.pictureSearchInput.value.trim());
    });

    byId(root, "nav-first").addEventListener("click", () => void this.navigate("first"));
    byId(root, "nav-prev").addEventListener("click", () => void this.navigate("prev"));
    byId(root, "nav-next").addEventListener("click", () => void this.navigate("next"));
    byId(root, "nav-last").addEventListener("click", () => void this.navigate("last"));

    // The box is re-read when the debounce fires, so a keystroke that empties
    // it also disarms any queued search.
    const run = debounce(() => {
      const query = this.searchInput.value;
      if (query.trim()) {
        void this.searchSynsets(query);
      }
    }, options.debounceMs ?? 200);
    this.searchInput.addEventListener("input", () => {
      if (!this.searchInput.value.trim()) {
        // An emptied box clears the panel without asking the server.
        this.searchSeq += 1;
        this.searchResults.replaceChildren();
        return;
      }
      run();
    });
  }

  /** Fetch the first picture and its annotations; the entry point. */
  async init(): Promise<void> {
    try {
      const first = await this.api.firstPicture();
      await this.showPicture(first.name);
    } catch (error) {
      this.fatal(error instanceof Error ? error.message : String(error));
    }
  }

  get currentPicture(): string | null {
    return this.current;
  }

  get busy(): boolean {
    return this.busyCount > 0;
  }

  // --- picture display ----------------------------------------------------

  private async showPicture(name: string): Promise<void> {
    this.current = name;
    this.pictureName.textContent = name;
    this.pictureImage.classList.add("hidden");
    this.picturePlaceholder.classList.remove("hidden");
    this.pictureImage.src = this.api.imageUrl(name);
    await this.refreshAnnotations(name);
  }

  private async refreshAnnotations(name: string): Promise<void> {
    const listing = await this.api.annotations(name);
    if (this.current === name) {
      this.renderListing(listing);
    }
  }

  private async searchPicture(name: string): Promise<void> {
    if (!name) {
      return;
    }
    try {
      const descriptor = await this.api.picture(name);
      await this.showPicture(descriptor.name);
    } catch (error) {
      if (error instanceof ApiError && error.status === 404) {
        this.notice("The picture cannot be found.");
        return; // display unchanged
      }
      this.notice(error instanceof Error ? error.message : String(error));
    }
  }

  private async navigate(direction: "first" | "prev" | "next" | "last"): Promise<void> {
    try {
      let descriptor;
      if (direction === "first") {
        descriptor = await this.api.firstPicture();
      } else if (direction === "last") {
        descriptor = await this.api.lastPicture();
      } else if (this.current === null) {
        return;
      } else if (direction === "next") {
        descriptor = await this.api.nextPicture(this.current);
      } else {
        descriptor = await this.api.prevPicture(this.current);
      }
      await this.showPicture(descriptor.name);
    } catch (error) {
      this.notice(error instanceof Error ? error.message : String(error));
    }
  }

  // --- synset search -------------------------------------------------------

  private async searchSynsets(query: string): Promise<void> {
    const seq = ++this.searchSeq;
    this.setBusy(+1);
    try {
      const page = await this.api.search(query);
      if (seq === this.searchSeq) {
        this.renderSearchResults(page);
      }
    } catch (error) {
      if (seq === this.searchSeq) {
        this.searchResults.replaceChildren();
        if (!(error instanceof ApiError && error.errorCode === "empty_query")) {
          this.notice(error instanceof Error ? error.message : String(error));
        }
      }
    } finally {
      this.setBusy(-1);
    }
  }

  private renderSearchResults(page: SearchPage): void {
    const doc = this.searchResults.ownerDocument;
    const fragment = doc.createDocumentFragment();
    if (page.groups.length === 0) {
      const empty = doc.createElement("p");
      empty.className = "no-results";
      empty.textContent = "No matching synsets.";
      fragment.append(empty);
    }
    for (const group of page.groups) {
      const heading = doc.createElement("h3");
      heading.className = "group-heading";
      heading.textContent = `${group.lexical_type}s`;
      fragment.append(heading);
      for (const synset of group.synsets) {
        const row = doc.createElement("div");
        row.className = "result-row";
        row.dataset.synsetId = synset.id;
        row.title = "Click to attach this synset to the current picture";

        const name = doc.createElement("span");
        name.className = "synset-name";
        name.textContent = synset.name;
        const gloss = doc.createElement("span");
        gloss.className = "synset-gloss";
        gloss.textContent = synset.gloss;
        row.append(name, gloss);
        row.addEventListener("click", () => this.attachSynset(synset.id));
        fragment.append(row);
      }
    }
    if (page.truncated) {
      const note = doc.createElement("p");
      note.className = "truncation-note";
      note.textContent = `Showing the first results of ${page.total_matches} matches; keep typing to narrow down.`;
      fragment.append(note);
    }
    this.searchResults.replaceChildren(fragment);
  }

  // --- annotations -----------------------------------------------------------

  private attachSynset(synsetId: string): void {
    const picture = this.current; // capture now: navigation must not retarget the click
    if (picture === null) {
      return;
    }
    this.enqueueMutation(async () => {
      this.setBusy(+1);
      try {
        await this.api.attach(picture, synsetId);
        await this.refreshAnnotations(picture);
      } catch (error) {
        if (error instanceof ApiError && error.errorCode === "already_attached") {
          this.notice("That synset is already attached to this picture.");
        } else {
          this.notice(error instanceof Error ? error.message : String(error));
        }
      } finally {
        this.setBusy(-1);
      }
    });
  }

  private removeAnnotation(synsetId: string): void {
    const picture = this.current;
    if (picture === null) {
      return;
    }
    // Immediate and final: no confirmation dialog, no undo.
    this.enqueueMutation(async () => {
      try {
        await this.api.detach(picture, synsetId);
        await this.refreshAnnotations(picture);
      } catch (error) {
        if (error instanceof ApiError && error.errorCode === "not_attached") {
          await this.refreshAnnotations(picture); // someone else removed it; resync
        } else {
          this.notice(error instanceof Error ? error.message : String(error));
        }
      }
    });
  }

  private enqueueMutation(operation: () => Promise<void>): void {
    // A failed operation must not wedge the queue for later clicks.
    this.mutationQueue = this.mutationQueue.then(operation).catch((error) => {
      this.notice(error instanceof Error ? error.message : String(error));
    });
  }

  private renderListing(listing: AnnotationListing): void {
    const doc = this.annotationList.ownerDocument;
    const fragment = doc.createDocumentFragment();
    if (listing.groups.length === 0) {
      const empty = doc.createElement("p");
      empty.className = "no-annotations";
      empty.textContent = "No annotations yet.";
      fragment.append(empty);
    }
    for (const group of listing.groups) {
      const heading = doc.createElement("h3");
      heading.className = "group-heading";
      heading.textContent = `${group.lexical_type}s`;
      fragment.append(heading);
      for (const entry of group.annotations) {
        const row = doc.createElement("div");
        row.className = "annotation-row";
        row.dataset.synsetId = entry.synset.id;

        const name = doc.createElement("span");
        name.className = "synset-name";
        name.textContent = entry.synset.name;
        const gloss = doc.createElement("span");
        gloss.className = "synset-gloss";
        gloss.textContent = entry.synset.gloss;
        const remove = doc.createElement("button");
        remove.className = "remove";
        remove.textContent = "X";
        remove.title = "Remove this annotation (no undo)";
        remove.addEventListener("click", () => this.removeAnnotation(entry.synset.id));
        row.append(name, gloss, remove);
        fragment.append(row);
      }
    }
    this.annotationList.replaceChildren(fragment);
  }

  /** Resolves once every queued annotation mutation has settled (test hook). */
  flushMutations(): Promise<void> {
    return this.mutationQueue;
  }

  // --- chrome ------------------------------------------------------------------

  private setBusy(delta: number): void {
    this.busyCount += delta;
    this.searchBusy.classList.toggle("hidden", this.busyCount === 0);
  }

  private notice(message: string): void {
    this.noticeBox.textContent = message;
    this.noticeBox.classList.remove("hidden");
    if (this.noticeTimer !== undefined) {
      clearTimeout(this.noticeTimer);
    }
    this.noticeTimer = setTimeout(() => {
      this.noticeBox.classList.add("hidden");
    }, this.noticeMs);
  }

  private fatal(message: string): void {
    this.noticeBox.textContent = `Cannot reach the annotation service: ${message}`;
    this.noticeBox.classList.remove("hidden");
    this.noticeBox.classList.add("fatal");
  }
}
