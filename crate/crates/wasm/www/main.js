import init, { lyndon, hilbert, verify } from "./pkg/pbw_wasm.js";

const presets = {
  "Heisenberg": {
    field: "Q",
    generators: [{ name: "x1", degree: 1 }, { name: "x2", degree: 1 }, { name: "x3", degree: 2 }],
    relations: ["x2*x1 - x1*x2 - x3", "x3*x1 - x1*x3", "x3*x2 - x2*x3"],
    degree_bound: 6,
  },
  "non-primitive y": {
    field: "Q",
    generators: [{ name: "x", degree: 1 }, { name: "y", degree: 2 }],
    relations: ["y*x - x*y"],
    comultiplication: { y: "1#y + y#1 + x#x" },
    degree_bound: 6,
  },
  "x^3 over F3": {
    field: { Fp: 3 },
    generators: [{ name: "x", degree: 1 }],
    relations: ["x^3"],
    degree_bound: 8,
  },
  "free, two letters": {
    field: "Q",
    generators: [{ name: "x1", degree: 1 }, { name: "x2", degree: 1 }],
    relations: [],
    degree_bound: 5,
  },
  "x^2 (not a Hopf ideal)": {
    field: "Q",
    generators: [{ name: "x", degree: 1 }],
    relations: ["x^2"],
    degree_bound: 6,
  },
};

const $ = (id) => document.getElementById(id);

function show(id, lines, cls) {
  const out = $(id);
  out.className = cls ?? "";
  out.textContent = lines.join("\n");
}

function bound() {
  const v = parseInt($("bound").value, 10);
  return Number.isFinite(v) && v > 0 ? v : undefined;
}

function runLyndon() {
  const r = JSON.parse(lyndon($("word").value, $("letters").value));
  if (r.error) return show("lyndon-out", [r.error], "fail");
  const lines = [`${r.word} = ${r.factors.map((f) => `(${f})`).join("")}`];
  if (r.lyndon) {
    lines.push("Lyndon");
    if (r.shirshov) lines.push(`Shirshov factorization (${r.shirshov[0]}, ${r.shirshov[1]})`);
    lines.push(`[${r.word}] = ${r.bracket}`);
  } else {
    lines.push("not Lyndon");
  }
  show("lyndon-out", lines);
}

function gammaLine(gamma) {
  return `Γ (${gamma.length}): ${gamma.map((g) => g.word).join(" < ")}`;
}

function runHilbert() {
  const r = JSON.parse(hilbert($("presentation").value, bound()));
  if (r.error) return show("presentation-out", [r.error], "fail");
  show("presentation-out", [
    `up to degree ${r.bound}`,
    gammaLine(r.gamma),
    `dimensions:     ${r.hilbert.join(", ")}`,
    `product over Γ: ${r.product.join(", ")} (${r.matches ? "equal" : "different"})`,
    `GK dimension: ${r.gk}`,
  ], r.matches ? "pass" : "fail");
}

function runVerify() {
  const r = JSON.parse(verify($("presentation").value, bound()));
  if (r.error) return show("presentation-out", [r.error], "fail");
  const lines = [`up to degree ${r.bound}`];
  for (const v of r.verdicts) {
    const detail = v.failures.length ? v.failures.join("; ") : v.checked !== undefined ? `${v.checked} checks` : "";
    lines.push(`${v.pass ? "PASS" : "FAIL"} ${v.name}${detail ? ": " + detail : ""}`);
  }
  lines.push(gammaLine(r.gamma), `dimensions: ${r.hilbert.join(", ")}`);
  if (r.finiteness) lines.push(`Γ is ${r.finiteness}`);
  show("presentation-out", lines, r.pass ? "pass" : "fail");
}

function loadPreset() {
  $("presentation").value = JSON.stringify(presets[$("preset").value], null, 2);
  $("presentation-out").textContent = "";
}

await init();
for (const name of Object.keys(presets)) $("preset").add(new Option(name, name));
$("preset").addEventListener("change", loadPreset);
$("lyndon").addEventListener("click", runLyndon);
$("hilbert").addEventListener("click", runHilbert);
$("verify").addEventListener("click", runVerify);
loadPreset();
runLyndon();
