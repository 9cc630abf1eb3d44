/** Minimal SVG assembly: pure string building, deterministic output. */

export type Attrs = Record<string, string | number>;

function escapeText(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function attrString(attrs: Attrs): string {
  return Object.entries(attrs)
    .map(([key, value]) => ` ${key}="${typeof value === "number" ? fmt(value) : value}"`)
    .join("");
}

/** Fixed-precision coordinate formatting keeps output byte-stable. */
export function fmt(value: number): string {
  if (!Number.isFinite(value)) return "0";
  const rounded = Math.round(value * 100) / 100;
  return Object.is(rounded, -0) ? "0" : String(rounded);
}

export function el(tag: string, attrs: Attrs, children: string[] = []): string {
  if (children.length === 0) {
    return `<${tag}${attrString(attrs)}/>`;
  }
  return `<${tag}${attrString(attrs)}>${children.join("")}</${tag}>`;
}

export function text(content: string, attrs: Attrs): string {
  return `<text${attrString(attrs)}>${escapeText(content)}</text>`;
}

export function polyline(points: Array<[number, number]>, attrs: Attrs): string {
  const joined = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  return el("polyline", { points: joined, fill: "none", ...attrs });
}

export function polygon(points: Array<[number, number]>, attrs: Attrs): string {
  const joined = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  return el("polygon", { points: joined, ...attrs });
}

export function svgDocument(width: number, height: number, children: string[]): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">` +
    children.join("") +
    `</svg>`
  );
}
