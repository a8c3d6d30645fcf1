import init, { basisJson, sampleGrid, gramJson } from "./pkg/sobolex_wasm.js";

const RES = 128;
const $ = (id) => document.getElementById(id);
let selected = 0;

function inputs() {
  return [Number($("n").value), $("gamma").value, $("family").value, $("lambdas").value];
}

// Diverging blue-white-red scale on [-m, m].
function color(v, m) {
  if (Number.isNaN(v)) return [255, 255, 255, 0];
  const t = m > 0 ? Math.max(-1, Math.min(1, v / m)) : 0;
  const c = Math.round(255 * (1 - Math.abs(t)));
  return t >= 0 ? [255, c, c, 255] : [c, c, 255, 255];
}

function drawHeat() {
  const values = sampleGrid(...inputs(), selected, RES);
  const m = values.reduce((a, v) => (Number.isNaN(v) ? a : Math.max(a, Math.abs(v))), 0);
  const img = new ImageData(RES, RES);
  values.forEach((v, i) => img.data.set(color(v, m), 4 * i));
  const scratch = new OffscreenCanvas(RES, RES);
  scratch.getContext("2d").putImageData(img, 0, 0);
  const ctx = $("heat").getContext("2d");
  ctx.imageSmoothingEnabled = false;
  ctx.clearRect(0, 0, 256, 256);
  ctx.drawImage(scratch, 0, 0, 256, 256);
  $("range").textContent = `|max| = ${m.toPrecision(4)}`;
}

function drawBasis() {
  const view = JSON.parse(basisJson(...inputs()));
  if (selected >= view.elements.length) selected = 0;
  $("basis").replaceChildren(
    ...view.elements.map((e, i) => {
      const li = document.createElement("li");
      li.textContent = `${e.label}: ${e.display}`;
      li.className = i === selected ? "active" : "";
      li.onclick = () => { selected = i; render(); };
      return li;
    }),
  );
}

function drawGram() {
  const r = JSON.parse(gramJson(...inputs(), $("against").value));
  const flags = [`diagonal: ${r.diagonal}`, `all zero: ${r.all_zero}`];
  if (r.positive_definite !== undefined) flags.push(`positive definite: ${r.positive_definite}`);
  $("verdict").textContent = flags.join(" · ");
  const head = `<tr><th></th>${r.cols.map((c) => `<th>${c}</th>`).join("")}</tr>`;
  const body = r.matrix
    .map((row, i) => `<tr><th>${r.rows[i]}</th>${row.map((v) => `<td class="${v === "0" ? "zero" : ""}">${v}</td>`).join("")}</tr>`)
    .join("");
  $("gram").innerHTML = `<table>${head}${body}</table>`;
}

function render() {
  $("error").textContent = "";
  try {
    drawBasis();
    drawHeat();
    drawGram();
  } catch (e) {
    $("error").textContent = String(e);
  }
}

await init();
$("run").onclick = () => { selected = 0; render(); };
$("against").onchange = render;
render();
