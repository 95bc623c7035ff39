// DOM wiring: builds the teaching panels inside a root element and binds
// them to a SessionStore. No framework, just elements and listeners.

import { SessionApi } from "./api.js";
import { ConnectFn, eventSourceConnect } from "./stream.js";
import { SessionStore } from "./store.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  if (text) node.textContent = text;
  return node;
}

export interface App {
  store: SessionStore;
  root: HTMLElement;
}

export function createApp(
  root: HTMLElement,
  baseUrl: string,
  fetchFn?: typeof fetch,
  connect: ConnectFn = eventSourceConnect,
): App {
  const api = new SessionApi(baseUrl, fetchFn);
  const store = new SessionStore(api, connect);

  root.innerHTML = "";
  const header = el("header");
  const title = el("h1", {}, "Teach your agent");
  const agentFace = el("span", { id: "agent-face", class: "agent-face" }, "…");
  header.append(title, agentFace);

  // --- concept-map editor -------------------------------------------------
  const editorPanel = el("section", { id: "editor-panel" });
  editorPanel.append(el("h2", {}, "Concept map"));
  const nodeId = el("input", { id: "node-id", placeholder: "node id" });
  const nodeLabel = el("input", { id: "node-label", placeholder: "label" });
  const addNodeBtn = el("button", { id: "add-node" }, "add node");
  const linkSource = el("input", { id: "link-source", placeholder: "from" });
  const linkTarget = el("input", { id: "link-target", placeholder: "to" });
  const linkRelation = el("input", { id: "link-relation", placeholder: "relation" });
  const addLinkBtn = el("button", { id: "add-link" }, "add link");
  const submitBtn = el("button", { id: "submit-map" }, "teach it");
  const draftView = el("ul", { id: "draft-view" });
  const diagView = el("ul", { id: "diagnostics" });
  const learnedBadge = el("p", { id: "learned-badge" });
  editorPanel.append(
    nodeId, nodeLabel, addNodeBtn,
    linkSource, linkTarget, linkRelation, addLinkBtn,
    submitBtn, draftView, diagView, learnedBadge,
  );

  // --- emotion display ------------------------------------------------------
  const emotionPanel = el("section", { id: "emotion-panel" });
  emotionPanel.append(el("h2", {}, "How the agent feels"));
  const emotionList = el("ul", { id: "emotion-list" });
  emotionPanel.append(emotionList);

  // --- practice playback -----------------------------------------------------
  const practicePanel = el("section", { id: "practice-panel" });
  practicePanel.append(el("h2", {}, "Practice"));
  const practiceBtn = el("button", { id: "run-practice" }, "try to enter the root");
  const frameList = el("ol", { id: "practice-frames" });
  const timelineView = el("ul", { id: "practice-timeline" });
  practicePanel.append(practiceBtn, frameList, timelineView);

  // --- learning-path picker -----------------------------------------------------
  const pathPanel = el("section", { id: "path-panel" });
  pathPanel.append(el("h2", {}, "Plan your learning path"));
  const goalList = el("ul", { id: "goal-pool" });
  const selectionView = el("ol", { id: "path-selection" });
  const confirmBtn = el("button", { id: "confirm-path", disabled: "true" }, "confirm path");
  const violationBanner = el("p", { id: "violation-banner", class: "banner" });
  pathPanel.append(goalList, selectionView, confirmBtn, violationBanner);

  // --- trace feed ----------------------------------------------------------------
  const tracePanel = el("section", { id: "trace-panel" });
  tracePanel.append(el("h2", {}, "Agent activity"));
  const traceList = el("ul", { id: "trace-feed" });
  tracePanel.append(traceList);

  root.append(header, editorPanel, emotionPanel, practicePanel, pathPanel, tracePanel);

  addNodeBtn.addEventListener("click", () => {
    store.editor.addNode(nodeId.value.trim(), nodeLabel.value.trim() || nodeId.value.trim());
    nodeId.value = "";
    nodeLabel.value = "";
    render();
  });
  addLinkBtn.addEventListener("click", () => {
    store.editor.addLink(
      linkSource.value.trim(),
      linkTarget.value.trim(),
      linkRelation.value.trim(),
    );
    render();
  });
  submitBtn.addEventListener("click", () => void store.submitMap());
  practiceBtn.addEventListener("click", () => void store.practice("entering_root"));
  confirmBtn.addEventListener("click", () => void store.confirmPath());

  goalList.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    const goalId = target.dataset?.goal;
    if (goalId && store.picker) {
      store.picker.select(goalId);
      render();
    }
  });

  function render(): void {
    draftView.innerHTML = "";
    const draft = store.editor.draft();
    for (const node of draft.nodes) {
      draftView.append(el("li", { "data-node": node.id }, `${node.id}: ${node.label}`));
    }
    for (const link of draft.links) {
      const item = el(
        "li",
        { "data-link": `${link.source}->${link.target}` },
        `${link.source} --${link.relation}--> ${link.target}`,
      );
      const markers = store.editor.markersFor(link.target);
      if (markers.length) item.classList.add("has-error");
      draftView.append(item);
    }

    diagView.innerHTML = "";
    for (const diag of store.editor.currentDiagnostics) {
      diagView.append(
        el("li", { class: `diag-${diag.severity}`, "data-code": diag.code }, diag.message),
      );
    }
    learnedBadge.textContent = store.learned ? "learned!" : "";

    emotionList.innerHTML = "";
    for (const row of store.emotions.list()) {
      emotionList.append(
        el(
          "li",
          { "data-emotion": row.emotion },
          `${row.glyph} ${row.emotion} ${row.bar} ${row.intensity.toFixed(2)}`,
        ),
      );
    }
    const latest = store.emotions.latest();
    agentFace.textContent = latest ? latest.glyph : "…";

    frameList.innerHTML = "";
    for (const frame of store.playback.frames) {
      const stamp = frame.t === null ? "" : ` @${frame.t}`;
      frameList.append(
        el("li", { class: `frame-${frame.kind}` }, `${frame.label}${stamp}`),
      );
    }
    timelineView.innerHTML = "";
    for (const point of store.playback.timeline) {
      timelineView.append(
        el("li", {}, `t=${point.t} ${point.emotion} ${point.intensity.toFixed(2)}`),
      );
    }

    if (store.picker) {
      goalList.innerHTML = "";
      for (const goal of store.picker.goals) {
        const button = el(
          "button",
          { "data-goal": goal.id },
          `${goal.id} (level ${goal.difficulty})`,
        );
        const item = el("li");
        item.append(button);
        goalList.append(item);
      }
      selectionView.innerHTML = "";
      for (const goalId of store.picker.current) {
        selectionView.append(el("li", {}, goalId));
      }
      if (store.picker.canConfirm) {
        confirmBtn.removeAttribute("disabled");
      } else {
        confirmBtn.setAttribute("disabled", "true");
      }
      violationBanner.textContent = store.picker.violationBanner();
    }

    traceList.innerHTML = "";
    for (const record of store.traceFeed.slice(-15)) {
      traceList.append(
        el(
          "li",
          {},
          `${record.thread}/${record.net}: ${record.task || record.outcome}`,
        ),
      );
    }
  }

  store.onChange(render);
  render();
  return { store, root };
}
