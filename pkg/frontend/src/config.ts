// Backend base URL resolution: meta tag, then localStorage override, then
// same-host default. Keeps the build static-host deployable.

export function apiBaseUrl(doc: Document | null = typeof document === "undefined" ? null : document): string {
  if (doc) {
    const meta = doc.querySelector('meta[name="bibliotext-api"]');
    const fromMeta = meta?.getAttribute("content");
    if (fromMeta) return fromMeta;
  }
  if (typeof localStorage !== "undefined") {
    const stored = localStorage.getItem("bibliotext-api");
    if (stored) return stored;
  }
  if (typeof location !== "undefined" && location.origin.startsWith("http")) {
    return `${location.protocol}//${location.hostname}:8000`;
  }
  return "http://localhost:8000";
}
