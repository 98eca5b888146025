/**
 * Panel UI wiring: form state in, service previews out.
 *
 * One debounce timer covers all edits; every refresh tick revalidates
 * the dirty panels and fetches their previews independently, so a bad
 * panel only takes down its own layer.  Responses are gated per panel
 * by LatestGate tickets, which keeps slow stale responses from
 * clobbering newer ones.
 */

import {
  ApiRequestError,
  createPermalink,
  fetchPreview,
  LatestGate,
  resolvePermalink,
  buildGenerateUrl,
  type PreviewResponse,
} from "./api.js";
import { nextColor } from "./colors.js";
import {
  DISTRIBUTIONS,
  SP_FIELDS,
  defaultSpValues,
  descriptorToPanel,
  fieldAtPosition,
  makePanel,
  panelToDescriptor,
  validatePanel,
  type DistributionName,
  type PanelState,
} from "./descriptor.js";
import { drawScene, type RenderLayer } from "./render.js";
import { readToken, writeToken } from "./urlstate.js";
import { emptyBounds, featureBounds, fitTransform, unionBounds, UNIT_SQUARE } from "./view.js";

const DEBOUNCE_MS = 300;
const PREVIEW_LIMIT = 2000;
const FORMATS = ["csv", "wkt", "geojson"] as const;

const AFFINE_LABELS = ["a1", "a2", "a3", "a4", "a5", "a6"];

interface PanelRuntime {
  state: PanelState;
  preview: PreviewResponse | null;
  gate: LatestGate;
  dirty: boolean;
  /** Set while the form has local validation errors. */
  invalid: boolean;
  element: HTMLElement | null;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className = "",
  text = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}

export class App {
  private panels: PanelRuntime[] = [];
  private seed = "0";
  private format: (typeof FORMATS)[number] = "csv";
  private timer: ReturnType<typeof setTimeout> | null = null;
  private lastToken: string | null = null;

  private readonly root: HTMLElement;
  private readonly apiBase: string;
  private canvas!: HTMLCanvasElement;
  private panelList!: HTMLElement;
  private statusLine!: HTMLElement;
  private shareOutput!: HTMLInputElement;
  private downloadLink!: HTMLAnchorElement;

  constructor(root: HTMLElement, apiBase = "") {
    this.root = root;
    this.apiBase = apiBase;
  }

  async init(): Promise<void> {
    this.buildChrome();
    window.addEventListener("hashchange", () => {
      void this.applyHash(window.location.hash);
    });
    window.addEventListener("resize", () => this.draw());
    const restored = await this.applyHash(window.location.hash);
    if (!restored) {
      this.addPanel("uniform");
      this.renderPanels();
      this.scheduleRefresh();
    }
  }

  // --- chrome ------------------------------------------------------------

  private buildChrome(): void {
    this.root.textContent = "";

    const toolbar = el("div", "toolbar");
    toolbar.append(el("span", "brand", "spatialgen"));

    const seedLabel = el("label", "", "seed ");
    const seedInput = el("input") as HTMLInputElement;
    seedInput.value = this.seed;
    seedInput.size = 8;
    seedInput.addEventListener("input", () => {
      this.seed = seedInput.value;
      this.markAllDirty();
      this.scheduleRefresh();
    });
    seedLabel.append(seedInput);
    toolbar.append(seedLabel);

    const formatLabel = el("label", "", "format ");
    const formatSelect = el("select") as HTMLSelectElement;
    for (const f of FORMATS) {
      const opt = el("option", "", f) as HTMLOptionElement;
      opt.value = f;
      formatSelect.append(opt);
    }
    formatSelect.addEventListener("change", () => {
      this.format = formatSelect.value as (typeof FORMATS)[number];
      this.updateDownloadLink();
    });
    formatLabel.append(formatSelect);
    toolbar.append(formatLabel);

    this.downloadLink = el("a", "button", "download") as HTMLAnchorElement;
    this.downloadLink.href = "#";
    toolbar.append(this.downloadLink);

    const shareButton = el("button", "button", "share");
    shareButton.addEventListener("click", () => void this.share());
    toolbar.append(shareButton);

    this.shareOutput = el("input", "share-output") as HTMLInputElement;
    this.shareOutput.readOnly = true;
    this.shareOutput.placeholder = "permalink appears here";
    toolbar.append(this.shareOutput);

    const main = el("div", "layout");
    const aside = el("aside", "sidebar");
    this.panelList = el("div", "panel-list");
    aside.append(this.panelList);
    const addButton = el("button", "button add", "add dataset");
    addButton.addEventListener("click", () => {
      this.addPanel("uniform");
      this.renderPanels();
      this.scheduleRefresh();
    });
    aside.append(addButton);

    const plot = el("section", "plot");
    this.canvas = el("canvas") as HTMLCanvasElement;
    plot.append(this.canvas);
    this.statusLine = el("div", "status");
    plot.append(this.statusLine);

    main.append(aside, plot);
    this.root.append(toolbar, main);
  }

  // --- panel management ----------------------------------------------------

  private usedColors(): string[] {
    return this.panels.map((p) => p.state.color);
  }

  private addPanel(distribution: DistributionName): PanelRuntime {
    const runtime: PanelRuntime = {
      state: makePanel(distribution, nextColor(this.usedColors())),
      preview: null,
      gate: new LatestGate(),
      dirty: true,
      invalid: false,
      element: null,
    };
    this.panels.push(runtime);
    return runtime;
  }

  private removePanel(runtime: PanelRuntime): void {
    this.panels = this.panels.filter((p) => p !== runtime);
    this.renderPanels();
    this.draw();
    this.updateDownloadLink();
  }

  private markAllDirty(): void {
    for (const p of this.panels) p.dirty = true;
  }

  private renderPanels(): void {
    this.panelList.textContent = "";
    for (const runtime of this.panels) {
      runtime.element = this.buildPanelElement(runtime);
      this.panelList.append(runtime.element);
    }
    this.updateDownloadLink();
  }

  private buildPanelElement(runtime: PanelRuntime): HTMLElement {
    const state = runtime.state;
    const box = el("div", "panel");

    const head = el("div", "panel-head");
    const swatch = el("input", "swatch") as HTMLInputElement;
    swatch.type = "color";
    swatch.value = state.color;
    swatch.addEventListener("input", () => {
      state.color = swatch.value;
      this.draw();
    });
    head.append(swatch);

    const select = el("select") as HTMLSelectElement;
    for (const name of DISTRIBUTIONS) {
      const opt = el("option", "", name) as HTMLOptionElement;
      opt.value = name;
      select.append(opt);
    }
    select.value = state.distribution;
    select.addEventListener("change", () => {
      state.distribution = select.value as DistributionName;
      state.sp = defaultSpValues(state.distribution);
      runtime.dirty = true;
      this.renderPanels();
      this.scheduleRefresh();
    });
    head.append(select);

    const visible = el("input") as HTMLInputElement;
    visible.type = "checkbox";
    visible.checked = state.visible;
    const visibleLabel = el("label", "visible");
    visibleLabel.append(visible, document.createTextNode(" show"));
    visible.addEventListener("change", () => {
      state.visible = visible.checked;
      this.draw();
    });
    head.append(visibleLabel);

    const remove = el("button", "button remove", "remove");
    remove.addEventListener("click", () => this.removePanel(runtime));
    head.append(remove);
    box.append(head);

    const banner = el("div", "banner");
    banner.hidden = true;
    box.append(banner);

    const fields = el("div", "fields");
    fields.append(
      this.buildField(runtime, "card", "cardinality", state.card, (v) => {
        state.card = v;
      }),
    );
    SP_FIELDS[state.distribution].forEach((f, i) => {
      fields.append(
        this.buildField(runtime, f.key, f.label, state.sp[i] ?? "", (v) => {
          state.sp[i] = v;
        }),
      );
    });
    AFFINE_LABELS.forEach((label, k) => {
      fields.append(
        this.buildField(runtime, label, label, state.affine[k] ?? "", (v) => {
          state.affine[k] = v;
        }),
      );
    });
    fields.append(
      this.buildField(runtime, "seed", "pinned seed", state.seed, (v) => {
        state.seed = v;
      }),
    );
    box.append(fields);
    return box;
  }

  private buildField(
    runtime: PanelRuntime,
    key: string,
    label: string,
    value: string,
    commit: (value: string) => void,
  ): HTMLElement {
    const wrap = el("div", "field");
    wrap.dataset["key"] = key;
    const lab = el("label", "", label);
    const input = el("input") as HTMLInputElement;
    input.value = value;
    input.addEventListener("input", () => {
      commit(input.value);
      runtime.dirty = true;
      this.scheduleRefresh();
    });
    const err = el("div", "field-error");
    err.hidden = true;
    wrap.append(lab, input, err);
    return wrap;
  }

  private showErrors(runtime: PanelRuntime, errors: Record<string, string>): void {
    const element = runtime.element;
    if (!element) return;
    for (const field of element.querySelectorAll<HTMLElement>(".field")) {
      const key = field.dataset["key"] ?? "";
      const err = field.querySelector<HTMLElement>(".field-error");
      if (!err) continue;
      const message = errors[key];
      err.hidden = !message;
      err.textContent = message ?? "";
    }
  }

  private showBanner(runtime: PanelRuntime, message: string | null): void {
    const banner = runtime.element?.querySelector<HTMLElement>(".banner");
    if (!banner) return;
    banner.hidden = message === null;
    banner.textContent = message ?? "";
  }

  // --- refresh loop --------------------------------------------------------

  private scheduleRefresh(): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.refreshDirty();
    }, DEBOUNCE_MS);
  }

  private async refreshDirty(): Promise<void> {
    const seedOk = /^\d+$/.test(this.seed.trim());
    const work: Promise<void>[] = [];
    for (const runtime of this.panels) {
      if (!runtime.dirty) continue;
      runtime.dirty = false;
      const errors = validatePanel(runtime.state);
      if (!seedOk) errors["seed"] = errors["seed"] ?? "";
      if (Object.keys(errors).length > 0 || !seedOk) {
        // invalid form: field errors only, no request
        runtime.invalid = true;
        this.showErrors(runtime, errors);
        this.showBanner(
          runtime,
          seedOk ? "fix the highlighted fields" : "dataset seed must be a non-negative integer",
        );
        this.draw();
        continue;
      }
      runtime.invalid = false;
      this.showErrors(runtime, {});
      work.push(this.fetchPanel(runtime));
    }
    this.updateDownloadLink();
    await Promise.all(work);
  }

  private async fetchPanel(runtime: PanelRuntime): Promise<void> {
    const descriptor = panelToDescriptor(runtime.state);
    const ticket = runtime.gate.take();
    try {
      const preview = await fetchPreview(
        this.apiBase,
        [descriptor],
        this.seed.trim(),
        PREVIEW_LIMIT,
      );
      if (!runtime.gate.isCurrent(ticket)) return;
      runtime.preview = preview;
      this.showBanner(runtime, null);
    } catch (e) {
      if (!runtime.gate.isCurrent(ticket)) return;
      runtime.preview = null;
      if (e instanceof ApiRequestError) {
        const field = e.position !== null
          ? fieldAtPosition(runtime.state.distribution, e.position)
          : null;
        this.showBanner(runtime, field ? `${field}: ${e.message}` : e.message);
      } else {
        this.showBanner(runtime, "service unreachable");
      }
    }
    this.draw();
  }

  // --- output ----------------------------------------------------------------

  private validDescriptors(): string[] {
    const out: string[] = [];
    for (const runtime of this.panels) {
      if (Object.keys(validatePanel(runtime.state)).length === 0) {
        out.push(panelToDescriptor(runtime.state));
      }
    }
    return out;
  }

  private updateDownloadLink(): void {
    const descriptors = this.validDescriptors();
    if (descriptors.length === 0 || !/^\d+$/.test(this.seed.trim())) {
      this.downloadLink.removeAttribute("href");
      return;
    }
    this.downloadLink.href = buildGenerateUrl(
      this.apiBase,
      descriptors,
      this.seed.trim(),
      this.format,
    );
  }

  private async share(): Promise<void> {
    const descriptors = this.validDescriptors();
    if (descriptors.length === 0) {
      this.shareOutput.value = "nothing valid to share";
      return;
    }
    try {
      const token = await createPermalink(this.apiBase, descriptors, this.seed.trim());
      this.lastToken = token;
      window.location.hash = writeToken(token);
      const url = window.location.href;
      this.shareOutput.value = url;
      this.shareOutput.select();
    } catch (e) {
      this.shareOutput.value = e instanceof Error ? e.message : "share failed";
    }
  }

  /** Restore panels from a "#t=..." hash; resolves false if none. */
  private async applyHash(hash: string): Promise<boolean> {
    const token = readToken(hash);
    if (token === null || token === this.lastToken) return token !== null;
    try {
      const payload = await resolvePermalink(this.apiBase, token);
      this.lastToken = token;
      this.panels = [];
      for (const text of payload.descriptors) {
        const runtime = this.addPanel("uniform");
        runtime.state = descriptorToPanel(text, nextColor(this.usedColors().slice(0, -1)));
      }
      this.seed = payload.seed;
      const seedInput = this.root.querySelector<HTMLInputElement>(".toolbar label input");
      if (seedInput) seedInput.value = this.seed;
      this.renderPanels();
      this.markAllDirty();
      void this.refreshDirty();
      return true;
    } catch {
      this.statusLine.textContent = "could not restore permalink";
      return false;
    }
  }

  // --- drawing -----------------------------------------------------------------

  private draw(): void {
    const ctx = this.canvas.getContext("2d");
    if (!ctx) return;
    const width = this.canvas.clientWidth || 640;
    const height = this.canvas.clientHeight || 480;
    this.canvas.width = width;
    this.canvas.height = height;

    const layers: RenderLayer[] = [];
    let bounds = emptyBounds();
    let shown = 0;
    let total = 0;
    this.panels.forEach((runtime, i) => {
      if (!runtime.state.visible || runtime.invalid || !runtime.preview) return;
      const features = runtime.preview.features;
      layers.push({
        features,
        color: runtime.state.color,
        label: `${i + 1}: ${runtime.state.distribution}`,
      });
      bounds = unionBounds(bounds, featureBounds(features));
      shown += runtime.preview.metadata.returned;
      total += runtime.preview.metadata.total;
    });
    const t = fitTransform(unionBounds(bounds, UNIT_SQUARE), width, height);
    drawScene(ctx, width, height, layers, t);
    this.statusLine.textContent =
      layers.length === 0
        ? "no visible datasets"
        : `showing ${shown} of ${total} geometries across ${layers.length} layer(s)`;
  }
}
