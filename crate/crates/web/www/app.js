import init, { classify_sl2, delta_alpha, similarity } from "./pkg/sl_local_web.js";

const PRESETS = {
  delta1: [["3", "0", "0"], ["0", "1/3", "0"], ["0", "0", "1"]],
  delta2: [["0", "1/2", "0"], ["2", "0", "0"], ["0", "0", "1"]],
  double: [["2", "0", "0"], ["0", "2", "0"], ["0", "0", "2"]],
  neg: [["-1", "0", "0"], ["0", "-1", "0"], ["0", "0", "-1"]],
};

const $ = (id) => document.getElementById(id);

function buildGrid() {
  const grid = $("map-grid");
  const labels = ["e", "f", "h"];
  let html = "<tr><th></th>" + labels.map((l) => `<th>${l}&#8614;</th>`).join("") + "</tr>";
  for (let i = 0; i < 3; i++) {
    html += `<tr><th>${labels[i]}</th>`;
    for (let j = 0; j < 3; j++) {
      html += `<td><input id="m${i}${j}" value="${i === j ? 1 : 0}"></td>`;
    }
    html += "</tr>";
  }
  grid.innerHTML = html;
}

function readGrid() {
  return [0, 1, 2].map((i) => [0, 1, 2].map((j) => $(`m${i}${j}`).value.trim() || "0"));
}

function writeGrid(m) {
  m.forEach((row, i) => row.forEach((v, j) => { $(`m${i}${j}`).value = v; }));
}

function show(prefix, result, verdict, good) {
  $(`${prefix}-out`).textContent = JSON.stringify(result, null, 2);
  const v = $(`${prefix}-verdict`);
  v.textContent = verdict;
  v.className = "verdict " + (good ? "ok" : "bad");
}

function fmtElement(x) {
  if (!x) return "none";
  return JSON.stringify(x.coords);
}

function runClassify() {
  const r = JSON.parse(classify_sl2(JSON.stringify(readGrid())));
  if (r.error) return show("classify", r, r.error, false);
  let text = r.verdict;
  if (r.refutation) text += ` (fails at coordinates ${fmtElement(r.refutation.point)})`;
  show("classify", r, text, r.verdict !== "not a local automorphism");
}

function runDelta() {
  const n = parseInt($("delta-n").value, 10);
  const r = JSON.parse(delta_alpha(n, $("delta-alpha").value.trim()));
  if (r.error) return show("delta", r, r.error, false);
  const rep = r.report;
  const text =
    `identities ${rep.identities_verified ? "verified" : "FAILED"}; ` +
    `basis ${rep.basis_certified ? "certified" : "not certified"}; ` +
    `rank of D²(E_1,n-1) = ${rep.rank_of_delta_squared_image}; ${rep.verdict}`;
  show("delta", r, text, rep.identities_verified && rep.basis_certified);
}

function runSimilarity() {
  const seed = parseInt($("sim-seed").value, 10) || 0;
  const r = JSON.parse(similarity($("sim-x").value, $("sim-y").value, seed));
  if (r.error) return show("sim", r, r.error, false);
  const text = r.outcome === "found"
    ? `similar; T = ${JSON.stringify(r.witness.T)}`
    : `${r.outcome}: ${r.x_invariant_factors.join(", ")} vs ${r.y_invariant_factors.join(", ")}`;
  show("sim", r, text, r.outcome === "found");
}

function transposeX() {
  try {
    const x = JSON.parse($("sim-x").value);
    const t = x[0].map((_, j) => x.map((row) => row[j]));
    $("sim-y").value = JSON.stringify(t);
  } catch (e) {
    show("sim", { error: String(e) }, "X is not valid JSON", false);
  }
}

await init();
buildGrid();
writeGrid(PRESETS.delta1);
document.querySelectorAll("[data-preset]").forEach((b) =>
  b.addEventListener("click", () => { writeGrid(PRESETS[b.dataset.preset]); runClassify(); }));
$("classify-run").addEventListener("click", runClassify);
$("delta-run").addEventListener("click", runDelta);
$("sim-run").addEventListener("click", runSimilarity);
$("sim-transpose").addEventListener("click", transposeX);
runClassify();
runDelta();
runSimilarity();
