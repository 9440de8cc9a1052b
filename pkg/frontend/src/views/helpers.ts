/** Small DOM/SVG helpers shared by the view renderers. */

import { ViewErrors, ViewName } from "../state.js";

export const SVG_NS = "http://www.w3.org/2000/svg";

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number> = {},
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, String(value));
  }
  return node;
}

export interface Frame {
  root: HTMLElement;
  body: HTMLElement;
  setError(message: string | null): void;
}

/** Standard frame chrome: title bar, error badge, content body. */
export function makeFrame(container: HTMLElement, view: ViewName, title: string): Frame {
  const root = el("section", `frame frame-${view}`);
  root.dataset.view = view;
  const header = el("header", "frame-header");
  header.append(el("h2", "frame-title", title));
  const badge = el("span", "error-badge");
  badge.hidden = true;
  header.append(badge);
  const body = el("div", "frame-body");
  root.append(header, body);
  container.append(root);
  return {
    root,
    body,
    setError(message: string | null) {
      badge.hidden = message === null;
      badge.textContent = message === null ? "" : `⚠ ${message}`;
      badge.title = message ?? "";
    },
  };
}

export function applyErrorBadge(frame: Frame, errors: ViewErrors, view: ViewName): void {
  frame.setError(errors[view]);
}

export function clear(node: Element): void {
  while (node.firstChild) {
    node.removeChild(node.firstChild);
  }
}
