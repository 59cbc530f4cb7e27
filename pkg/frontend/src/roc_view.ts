/**
 * SVG rendering of the trade-off curve plus the traffic-light panel.
 *
 * Everything drawn here is a server value: the curve comes from /roc
 * samples, the marked point, tangent slope, and ball radii from the
 * /determine report. The only arithmetic is the coordinate transform.
 */

import type { DeterminationReport, RocRow } from "./types";
import { VERDICT_TEXT } from "./types";

export const MARGIN = 30;
export const SPAN = 300;
const SIZE = SPAN + 2 * MARGIN;

const toX = (fpr: number) => MARGIN + fpr * SPAN;
const toY = (tpr: number) => MARGIN + (1 - tpr) * SPAN;

/** Six significant digits, shortest form. */
export function formatValue(value: number): string {
  return String(Number(value.toPrecision(6)));
}

const SVG_NS = "http://www.w3.org/2000/svg";

function svgElement<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  return node;
}

export interface RocViewHandles {
  root: HTMLElement;
  render(report: DeterminationReport, roc: RocRow[]): void;
}

export function createRocView(): RocViewHandles {
  const root = document.createElement("section");
  root.className = "roc-view";

  const svg = svgElement("svg", {
    viewBox: `0 0 ${SIZE} ${SIZE}`,
    width: String(SIZE),
    height: String(SIZE),
  });
  svg.dataset.role = "roc-chart";

  const frame = svgElement("rect", {
    x: String(MARGIN),
    y: String(MARGIN),
    width: String(SPAN),
    height: String(SPAN),
    class: "frame",
  });
  const diagonal = svgElement("line", {
    x1: String(toX(0)),
    y1: String(toY(0)),
    x2: String(toX(1)),
    y2: String(toY(1)),
    class: "diagonal",
  });
  const ballRed = svgElement("circle", {
    cx: String(toX(1)),
    cy: String(toY(1)),
    r: "0",
    class: "ball ball-red",
  });
  ballRed.dataset.role = "ball-red";
  const ballGreen = svgElement("circle", {
    cx: String(toX(0)),
    cy: String(toY(0)),
    r: "0",
    class: "ball ball-green",
  });
  ballGreen.dataset.role = "ball-green";
  const curve = svgElement("polyline", { points: "", class: "roc-curve" });
  curve.dataset.role = "roc-curve";
  const tangent = svgElement("line", { class: "tangent" });
  tangent.dataset.role = "tangent";
  const marker = svgElement("circle", {
    r: "4",
    class: "optimal-point",
  });
  marker.dataset.role = "optimal-point";

  svg.append(frame, diagonal, ballRed, ballGreen, curve, tangent, marker);

  const panel = document.createElement("div");
  panel.className = "verdict-panel";

  const light = document.createElement("div");
  light.className = "traffic-light";
  light.dataset.role = "traffic-light";
  const verdictText = document.createElement("span");
  verdictText.dataset.role = "verdict-text";
  light.append(verdictText);

  const banner = document.createElement("div");
  banner.className = "degenerate-banner";
  banner.dataset.role = "degenerate-banner";
  banner.textContent =
    "degenerate signal: the two states are indistinguishable, " +
    "verdict rests on costs alone";
  banner.hidden = true;

  const headlines = document.createElement("dl");
  headlines.className = "headlines";
  const headlineSlots = new Map<string, HTMLElement>();
  for (const [key, label] of [
    ["expected-cost", "expected cost"],
    ["dist-red", "distance to always-act corner"],
    ["dist-green", "distance to never-act corner"],
  ] as const) {
    const term = document.createElement("dt");
    term.textContent = label;
    const detail = document.createElement("dd");
    detail.dataset.role = `headline-${key}`;
    headlines.append(term, detail);
    headlineSlots.set(key, detail);
  }

  panel.append(light, banner, headlines);
  root.append(svg, panel);

  const render = (report: DeterminationReport, roc: RocRow[]) => {
    curve.setAttribute(
      "points",
      roc.map((row) => `${toX(row.fpr)},${toY(row.tpr)}`).join(" "),
    );

    // ball radii scale with the plot, same unit as the axes
    ballRed.setAttribute("r", String(report.delta1 * SPAN));
    ballGreen.setAttribute("r", String(report.delta0 * SPAN));

    const { fpr, tpr } = report.point;
    marker.setAttribute("cx", String(toX(fpr)));
    marker.setAttribute("cy", String(toY(tpr)));

    if (report.cutoff === null) {
      tangent.setAttribute("visibility", "hidden");
    } else {
      // iso-cost line through the marked point, slope = cost ratio
      const slope = report.cost_ratio;
      let loF = 0;
      let hiF = 1;
      if (slope > 0) {
        loF = Math.max(0, fpr - tpr / slope);
        hiF = Math.min(1, fpr + (1 - tpr) / slope);
      }
      tangent.setAttribute("visibility", "visible");
      tangent.setAttribute("x1", String(toX(loF)));
      tangent.setAttribute("y1", String(toY(tpr + slope * (loF - fpr))));
      tangent.setAttribute("x2", String(toX(hiF)));
      tangent.setAttribute("y2", String(toY(tpr + slope * (hiF - fpr))));
    }

    light.classList.remove("verdict-red", "verdict-amber", "verdict-green");
    light.classList.add(
      report.verdict === "RedLight"
        ? "verdict-red"
        : report.verdict === "AmberLight"
          ? "verdict-amber"
          : "verdict-green",
    );
    verdictText.textContent = VERDICT_TEXT[report.verdict];
    banner.hidden = !report.degenerate;

    headlineSlots.get("expected-cost")!.textContent = formatValue(
      report.expected_cost,
    );
    headlineSlots.get("dist-red")!.textContent = formatValue(report.dist_red);
    headlineSlots.get("dist-green")!.textContent = formatValue(
      report.dist_green,
    );
  };

  return { root, render };
}
