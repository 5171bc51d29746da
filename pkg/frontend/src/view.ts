/**
 * Plain-DOM rendering for the builder and translation panels. The view is a
 * pure function of store state: each update clears and redraws its panel.
 */
import { Slot, SlotChoices } from "./api.js";
import { BuilderStore } from "./builderStore.js";
import { TranslateStore } from "./translateStore.js";

const SLOT_LABELS: Record<Slot, string> = {
  subject: "Subject",
  subject_suffix: "Subject suffix",
  verb: "Verb",
  verb_tense: "Tense",
  object: "Object",
  object_suffix: "Object suffix",
  object_pronoun: "Object pronoun",
};

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

/** Wrap bracketed placeholders like "[migrate]" in <mark> elements. */
export function highlightPlaceholders(doc: Document, text: string): HTMLElement {
  const span = el(doc, "span", "surface");
  for (const piece of text.split(/(\[[^\]]+\])/)) {
    if (piece.startsWith("[") && piece.endsWith("]")) {
      span.appendChild(el(doc, "mark", "placeholder", piece));
    } else if (piece) {
      span.appendChild(doc.createTextNode(piece));
    }
  }
  return span;
}

function renderSlot(
  doc: Document,
  slot: SlotChoices,
  selected: string | undefined,
  store: BuilderStore,
): HTMLElement {
  const row = el(doc, "div", "slot-row");
  row.dataset.slot = slot.slot;

  const label = el(doc, "label", undefined, SLOT_LABELS[slot.slot]);
  label.htmlFor = `slot-${slot.slot}`;
  row.appendChild(label);

  const select = el(doc, "select");
  select.id = `slot-${slot.slot}`;
  select.disabled = slot.locked_reason !== null;
  const blank = el(doc, "option", undefined, slot.required ? "— required —" : "—");
  blank.value = "";
  select.appendChild(blank);
  for (const choice of slot.choices) {
    const option = el(doc, "option", undefined, `${choice.surface} (${choice.gloss})`);
    option.value = choice.id;
    if (choice.id === selected) option.selected = true;
    select.appendChild(option);
  }
  select.addEventListener("change", () => {
    if (select.value) void store.select(slot.slot, select.value);
    else void store.clear(slot.slot);
  });
  row.appendChild(select);

  if (slot.locked_reason !== null) {
    row.appendChild(el(doc, "span", "locked-reason", slot.locked_reason));
  }
  return row;
}

export function renderBuilder(container: HTMLElement, store: BuilderStore): void {
  const doc = container.ownerDocument;
  const state = store.getState();
  container.replaceChildren();

  for (const slot of state.slots) {
    container.appendChild(
      renderSlot(doc, slot, state.selections[slot.slot], store),
    );
  }

  const status = el(doc, "div", "builder-status", state.status);
  container.appendChild(status);

  const preview = el(doc, "div", "preview");
  // the preview is the server's rendering, shown only once it exists
  preview.textContent = state.surface ?? "";
  container.appendChild(preview);

  if (state.error) {
    container.appendChild(el(doc, "div", "error-banner", state.error));
  }

  const reset = el(doc, "button", "reset", "Start over");
  reset.addEventListener("click", () => void store.reset());
  container.appendChild(reset);
}

function renderRecordCard(doc: Document, store: TranslateStore): HTMLElement {
  const record = store.getState().record!;
  const card = el(doc, "div", "record-card");
  card.appendChild(el(doc, "h3", undefined, record.input));

  const list = el(doc, "ol", "clauses");
  for (let i = 0; i < record.ovp_surfaces.length; i += 1) {
    const item = el(doc, "li", "clause");
    const ovp = el(doc, "div", "ovp");
    ovp.appendChild(highlightPlaceholders(doc, record.ovp_surfaces[i]));
    item.appendChild(ovp);
    item.appendChild(el(doc, "div", "comparator", record.comparators[i]));
    const back = el(doc, "div", "backwards");
    back.appendChild(highlightPlaceholders(doc, record.backwards[i]));
    item.appendChild(back);
    list.appendChild(item);
  }
  card.appendChild(list);

  const badges = store.badges();
  if (record.scores && badges) {
    const scores = el(doc, "dl", "scores");
    for (const [name, value] of Object.entries(record.scores)) {
      scores.appendChild(el(doc, "dt", undefined, name));
      const dd = el(doc, "dd", `badge badge-${badges[name]}`, value.toFixed(3));
      dd.title = `${badges[name]} (threshold ${store.threshold.toFixed(3)})`;
      scores.appendChild(dd);
    }
    card.appendChild(scores);
  }
  return card;
}

export function renderTranslatePanel(
  container: HTMLElement,
  store: TranslateStore,
): void {
  const doc = container.ownerDocument;
  const state = store.getState();
  container.replaceChildren();

  const input = el(doc, "textarea");
  input.id = "translate-input";
  input.value = state.text;
  input.addEventListener("input", () => store.setText(input.value));
  container.appendChild(input);

  const submit = el(doc, "button", "submit", "Translate");
  submit.disabled = !store.canSubmit;
  submit.addEventListener("click", () => void store.submit());
  container.appendChild(submit);

  if (state.error) {
    const banner = el(
      doc,
      "div",
      state.retryable ? "error-banner retryable" : "error-banner",
      state.retryable ? `${state.error} — try again shortly` : state.error,
    );
    container.appendChild(banner);
  }

  if (state.record) {
    container.appendChild(renderRecordCard(doc, store));
  }
}
