import init, { evaluate, permeanceCurves, forceCurves } from "./pkg/toroflux_web.js";

const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
const mm = (v) => Number(v) * 1e-3;
const errorBox = document.getElementById("error");

function fields(form) {
  return Object.fromEntries(new FormData(form).entries());
}

function guarded(fn) {
  return () => {
    try {
      errorBox.textContent = "";
      fn();
    } catch (e) {
      errorBox.textContent = String(e.message ?? e);
    }
  };
}

// series: [{ x, y, color, dashed }]
function plot(canvas, series, { logX = false, logY = false, xLabel = "", yLabel = "" } = {}) {
  const ctx = canvas.getContext("2d");
  const { width, height } = canvas;
  const pad = { l: 70, r: 16, t: 12, b: 36 };
  ctx.clearRect(0, 0, width, height);

  const tx = logX ? Math.log10 : (v) => v;
  const ty = logY ? Math.log10 : (v) => v;
  const pts = series.flatMap((s) => s.x.map((x, i) => [tx(x), ty(s.y[i])]))
    .filter(([x, y]) => Number.isFinite(x) && Number.isFinite(y));
  if (pts.length === 0) return;
  let [x0, x1] = [Math.min(...pts.map((p) => p[0])), Math.max(...pts.map((p) => p[0]))];
  let [y0, y1] = [Math.min(...pts.map((p) => p[1])), Math.max(...pts.map((p) => p[1]))];
  if (y1 === y0) { y0 -= 1; y1 += 1; }
  if (x1 === x0) { x0 -= 1; x1 += 1; }
  const px = (x) => pad.l + ((x - x0) / (x1 - x0)) * (width - pad.l - pad.r);
  const py = (y) => height - pad.b - ((y - y0) / (y1 - y0)) * (height - pad.t - pad.b);

  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad.l, pad.t, width - pad.l - pad.r, height - pad.t - pad.b);
  ctx.fillStyle = "#444";
  ctx.font = "11px system-ui";
  const fmt = (v, log) => (log ? `1e${v.toFixed(1)}` : v.toPrecision(3));
  for (let k = 0; k <= 4; k++) {
    const xv = x0 + (k / 4) * (x1 - x0);
    const yv = y0 + (k / 4) * (y1 - y0);
    ctx.fillText(fmt(xv, logX), px(xv) - 16, height - pad.b + 14);
    ctx.fillText(fmt(yv, logY), 4, py(yv) + 4);
  }
  ctx.fillText(xLabel, width / 2 - 20, height - 6);
  ctx.save();
  ctx.translate(12, pad.t + 60);
  ctx.fillText(yLabel, 0, 0);
  ctx.restore();

  for (const s of series) {
    ctx.strokeStyle = s.color;
    ctx.setLineDash(s.dashed ? [6, 4] : []);
    ctx.beginPath();
    let pen = false;
    s.x.forEach((x, i) => {
      const [u, v] = [tx(x), ty(s.y[i])];
      if (!Number.isFinite(u) || !Number.isFinite(v)) { pen = false; return; }
      pen ? ctx.lineTo(px(u), py(v)) : ctx.moveTo(px(u), py(v));
      pen = true;
    });
    ctx.stroke();
  }
  ctx.setLineDash([]);
}

const evalForm = document.getElementById("eval");
const runEval = guarded(() => {
  const f = fields(evalForm);
  const e = evaluate(f.kind, mm(f.r), mm(f.ri), mm(f.ro));
  document.getElementById("eval-out").textContent =
    `eta        ${e.eta.toPrecision(10)}  (${e.branch})\n` +
    `G_m        ${e.exists ? e.permeance.toExponential(8) + " H" : "tube does not exist"}\n` +
    `G_m legacy ${Number.isFinite(e.legacy) ? e.legacy.toExponential(8) + " H" : "undefined"}`;
  e.free();
});

const curvesForm = document.getElementById("curves");
const runCurves = guarded(() => {
  const f = fields(curvesForm);
  const outer = f.outer.split(",").map(Number).filter((v) => v > 0);
  const n = Math.max(2, Number(f.samples) | 0);
  const c = permeanceCurves(f.kind, new Float64Array(outer), 0.01, Math.max(...outer, 0.02) * 1.2, n);
  const x = c.x, exact = c.exact, legacy = c.legacy;
  c.free();
  const series = outer.flatMap((_, k) => [
    { x, y: exact.slice(k * n, (k + 1) * n), color: COLORS[k % COLORS.length] },
    { x, y: legacy.slice(k * n, (k + 1) * n), color: COLORS[k % COLORS.length], dashed: true },
  ]);
  plot(document.getElementById("curves-plot"), series, { logX: true, logY: true, xLabel: "r_i/R", yLabel: "G_m/(mu0 R)" });
});

const forceForm = document.getElementById("force");
const runForce = guarded(() => {
  const f = fields(forceForm);
  const r = forceCurves(f.kind, f.mode, mm(f.r), mm(f.held), Number(f.theta), mm(f.start), mm(f.stop), 300);
  const x = Array.from(r.stroke, (v) => v * 1e3);
  const exact = Array.from(r.exact, Math.abs);
  const legacy = Array.from(r.legacy, Math.abs);
  const dev = r.deviationPercent;
  r.free();
  plot(document.getElementById("force-plot"), [
    { x, y: exact, color: COLORS[0] },
    { x, y: legacy, color: COLORS[1], dashed: true },
  ], { logY: true, xLabel: "stroke [mm]", yLabel: "|F| [N]" });
  plot(document.getElementById("dev-plot"), [{ x, y: Array.from(dev), color: COLORS[2] }],
    { xLabel: "stroke [mm]", yLabel: "deviation [%]" });
});

await init();
for (const [form, run] of [[evalForm, runEval], [curvesForm, runCurves], [forceForm, runForce]]) {
  form.addEventListener("input", run);
  form.addEventListener("submit", (e) => e.preventDefault());
  run();
}
