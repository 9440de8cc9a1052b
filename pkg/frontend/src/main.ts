/** Dashboard bootstrap: wire the store, the API client, and the six views. */

import { VesaClient } from "./api.js";
import { DashboardStore } from "./state.js";
import { createChordView } from "./views/chordView.js";
import { createCloudView } from "./views/cloudView.js";
import { createHistogramView } from "./views/histogramView.js";
import { createListView } from "./views/listView.js";
import { createMapView } from "./views/mapView.js";
import { createSearchBar } from "./views/searchBar.js";
import { startTourIfFirstVisit } from "./views/tour.js";

declare global {
  interface Window {
    VESA_API_URL?: string;
  }
}

function apiBaseUrl(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("api");
  return (fromQuery || window.VESA_API_URL || "http://127.0.0.1:8080").replace(/\/$/, "");
}

export function boot(root: HTMLElement): DashboardStore {
  const client = new VesaClient(apiBaseUrl());
  const store = new DashboardStore((selection) => client.filter(selection));

  createSearchBar(root, store, client);
  createCloudView(root, store);
  createListView(root, store, client);
  createMapView(root, store);
  createHistogramView(root, store);
  createChordView(root, store);

  void store.load();
  startTourIfFirstVisit(root);
  return store;
}

const rootElement = document.getElementById("dashboard");
if (rootElement) {
  boot(rootElement);
}
