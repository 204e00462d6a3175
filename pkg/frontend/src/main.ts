import { ApiClient } from "./api.js";
import { ExplorerApp } from "./app.js";

// Same-origin by default (served from the scenario service's /ui route);
// point elsewhere with ?service=http://host:port or a global override.
const params = new URLSearchParams(window.location.search);
const base =
  params.get("service") ??
  (window as { PVTRADE_SERVICE_URL?: string }).PVTRADE_SERVICE_URL ??
  "";

new ExplorerApp(new ApiClient(base)).start();
