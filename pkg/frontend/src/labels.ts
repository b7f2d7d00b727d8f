import type { ContextData, ScaleBand } from "./types.js";

/** Escape user-entered text for interpolation into HTML templates. */
export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

/** "significant" -> "Significant", "partially_effective" -> "Partially effective". */
export function levelLabel(level: string): string {
  const words = level.replace(/_/g, " ");
  return words.charAt(0).toUpperCase() + words.slice(1);
}

export function areaLabel(area: string): string {
  return area.charAt(0).toUpperCase() + area.slice(1);
}

export function formatNumber(value: number): string {
  return String(value);
}

export function formatDelta(delta: number): string {
  return delta > 0 ? `+${formatNumber(delta)}` : formatNumber(delta);
}

/**
 * Which qualitative band a 0-100 value falls in, per the scale the server
 * sent with the register. Returns null while the value is out of range or
 * the scale is missing, so callers can suppress the label.
 */
export function bandForValue(context: ContextData, value: number): ScaleBand | null {
  if (!Number.isInteger(value) || value < 0 || value > 100) return null;
  for (const band of context.impact_scale.bands) {
    if (value >= band.lower && (band.upper === null || value <= band.upper)) {
      return band;
    }
  }
  return null;
}

/**
 * Preview of the likelihood level the server will derive for an evidence
 * combination, shown next to the selectors before a risk is saved. Purely
 * a UI affordance: the authoritative level always comes back from the API
 * with the saved risk's score.
 */
export function likelihoodHint(
  capability: string,
  motivation: string,
  controls: string,
  override: string | null,
): string {
  if (override) return override;
  if (capability === "insufficient" || controls === "effective") return "low";
  if (motivation === "high" && controls === "ineffective") return "high";
  return "medium";
}
