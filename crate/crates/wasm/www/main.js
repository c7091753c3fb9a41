// Built with: wasm-pack build crates/wasm --target web --out-dir www/pkg
import init, { describe, diameterSequence, forbiddenOrders } from "./pkg/linedigraph_wasm.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value) | 0;

function show(el, f) {
  el.classList.remove("err");
  try {
    el.textContent = f();
  } catch (e) {
    el.classList.add("err");
    el.textContent = String(e);
  }
}

function draw(report) {
  const c = $("canvas");
  const ctx = c.getContext("2d");
  ctx.clearRect(0, 0, c.width, c.height);
  if (!report.arcs) {
    ctx.fillText(`order ${report.order}: too large to draw`, 20, 20);
    return;
  }
  const n = report.order;
  const r = c.width / 2 - 30;
  const pos = [...Array(n).keys()].map((i) => {
    const t = (2 * Math.PI * i) / n - Math.PI / 2;
    return [c.width / 2 + r * Math.cos(t), c.height / 2 + r * Math.sin(t)];
  });
  ctx.strokeStyle = "rgba(40, 70, 160, 0.5)";
  for (const [u, v] of report.arcs) {
    const [x1, y1] = pos[u];
    const [x2, y2] = pos[v];
    ctx.beginPath();
    if (u === v) {
      ctx.arc(x1, y1 - 8, 8, 0, 2 * Math.PI);
    } else {
      ctx.moveTo(x1, y1);
      ctx.lineTo(x2, y2);
      const a = Math.atan2(y2 - y1, x2 - x1);
      const hx = x2 - 5 * Math.cos(a), hy = y2 - 5 * Math.sin(a);
      ctx.moveTo(hx, hy);
      ctx.lineTo(hx - 7 * Math.cos(a - 0.4), hy - 7 * Math.sin(a - 0.4));
      ctx.moveTo(hx, hy);
      ctx.lineTo(hx - 7 * Math.cos(a + 0.4), hy - 7 * Math.sin(a + 0.4));
    }
    ctx.stroke();
  }
  ctx.fillStyle = "#222";
  pos.forEach(([x, y], i) => {
    ctx.beginPath();
    ctx.arc(x, y, 3, 0, 2 * Math.PI);
    ctx.fill();
    if (report.labels && n <= 64) ctx.fillText(report.labels[i], x + 5, y - 5);
  });
}

await init();

$("draw").onclick = () =>
  show($("out1"), () => {
    const report = JSON.parse(describe($("family").value, num("pa"), num("pb"), num("line")));
    draw(report);
    const { arcs, labels, ...rest } = report;
    return JSON.stringify(rest, null, 2);
  });

$("diam").onclick = () =>
  show($("out1"), () => {
    const v = JSON.parse(diameterSequence($("family").value, num("pa"), num("pb"), num("line")));
    return `${v.name}: ${v.values.join(", ")}\nclassification: ${JSON.stringify(v.classification)}`;
  });

$("orders").onclick = () =>
  show($("out2"), () => {
    const v = JSON.parse(forbiddenOrders(num("sigma"), num("n"), $("words").value, num("k"), $("sqfree").checked));
    let text = `${v.source}\n${v.terms.join(", ")}`;
    if (v.minimal_polynomial) text += `\nminimal polynomial coefficients: ${JSON.stringify(v.minimal_polynomial)}`;
    if (v.recurrence) text += `\nrecurrence order ${v.recurrence.order}, from k = ${v.recurrence.start}`;
    text += `\nclassification: ${JSON.stringify(v.classification)}`;
    return text;
  });
