// Browser entry point: mount the app against a running session service
// (same origin by default, ?api=... to override) and start a session.

import { createApp } from "./app.js";

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("api") ?? "";
const catalogId = params.get("catalog") ?? "vs_transport_in_plants";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app element");

const { store } = createApp(root, baseUrl);
void store.start(catalogId);
