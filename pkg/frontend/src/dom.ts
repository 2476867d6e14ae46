// Small element builder; enough structure for this app without a framework.

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | boolean | ((event: Event) => void)> = {},
  children: Array<Node | string> = [],
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (typeof value === "function") {
      node.addEventListener(key.replace(/^on/, ""), value);
    } else if (typeof value === "boolean") {
      if (value) node.setAttribute(key, "");
      else node.removeAttribute(key);
    } else {
      node.setAttribute(key, value);
    }
  }
  for (const child of children) {
    node.append(child);
  }
  return node;
}

export function clear(node: HTMLElement): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}

export function table(headers: string[], rows: Array<Array<Node | string>>,
                      rowClass?: (index: number) => string): HTMLTableElement {
  const head = el("tr", {}, headers.map((h) => el("th", {}, [h])));
  const body = rows.map((cells, index) => {
    const tr = el("tr", {}, cells.map((c) => el("td", {}, [c])));
    if (rowClass) {
      const cls = rowClass(index);
      if (cls) tr.className = cls;
    }
    return tr;
  });
  return el("table", {}, [el("thead", {}, [head]), el("tbody", {}, body)]);
}

export function banner(message: string, kind: "error" | "info" = "error"): HTMLElement {
  return el("div", { class: `banner banner-${kind}`, role: "alert" }, [message]);
}
