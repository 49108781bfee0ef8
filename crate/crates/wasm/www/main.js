import init, { cartan_info, report, certify, sweep } from "./pkg/logfano_wasm.js";

const $ = (id) => document.getElementById(id);
const SVG = "http://www.w3.org/2000/svg";

// Rationals arrive as "p/q" strings; only the plot converts them to floats.
const ratio = (s) => {
  const [p, q] = String(s).split("/");
  return Number(p) / (q === undefined ? 1 : Number(q));
};

const rootString = (coeffs, suffix = "") => {
  const parts = [];
  coeffs.forEach((c, j) => {
    if (c === 0) return;
    const sign = c < 0 ? "-" : parts.length ? "+" : "";
    const mag = Math.abs(c) === 1 ? "" : Math.abs(c);
    parts.push(`${sign}${mag}a${j + 1}${suffix}`);
  });
  return parts.length ? parts.join("") : "0";
};

function call(fn, ...args) {
  try {
    return [JSON.parse(fn(...args)), null];
  } catch (e) {
    return [null, String(e)];
  }
}

function setupNodes() {
  const [info, err] = call(cartan_info, $("type").value);
  const nodes = $("nodes");
  nodes.replaceChildren();
  if (err) {
    $("error").textContent = err;
    return;
  }
  $("class").textContent = `rank ${info.rank}, ${info.class.toLowerCase()}`;
  for (let i = 1; i <= info.rank; i++) {
    const b = document.createElement("button");
    b.textContent = `s${i}`;
    b.title = `append ${i}`;
    b.onclick = () => {
      const w = $("word").value.trim();
      $("word").value = w ? `${w},${i}` : `${i}`;
      refresh();
    };
    nodes.appendChild(b);
  }
}

function drawBars(data) {
  const svg = $("bars");
  svg.replaceChildren();
  const b = data.b;
  if (!b.length) return;
  const tilde = data.schubert ? data.schubert.delta_tilde.map(ratio) : null;
  const width = Number(svg.getAttribute("width"));
  const height = Number(svg.getAttribute("height"));
  const mid = height / 2;
  const slot = Math.min(60, (width - 40) / b.length);
  const bmax = Math.max(1, ...b.map(Math.abs));
  const scale = (mid - 24) / bmax;

  const add = (tag, attrs, text) => {
    const el = document.createElementNS(SVG, tag);
    for (const [k, v] of Object.entries(attrs)) el.setAttribute(k, v);
    if (text !== undefined) el.textContent = text;
    svg.appendChild(el);
    return el;
  };
  add("line", { x1: 20, x2: width - 10, y1: mid, y2: mid, stroke: "#999" });
  b.forEach((v, k) => {
    const x = 30 + k * slot;
    const h = Math.abs(v) * scale;
    add("rect", {
      x, y: v >= 0 ? mid - h : mid, width: slot * 0.4, height: h,
      fill: v > 0 ? "#0969da" : "#cf222e",
    });
    add("text", { x, y: v >= 0 ? mid - h - 4 : mid + h + 12 }, v);
    add("text", { x, y: height - 4 }, k + 1);
    if (tilde) {
      // c~_i on a fixed scale where the dashed line marks 1.
      const unit = mid - 24;
      const t = tilde[k];
      const th = Math.min(Math.abs(t), 2) * unit / 2;
      add("rect", {
        x: x + slot * 0.45, y: t >= 0 ? mid - th : mid, width: slot * 0.4, height: th,
        fill: t < 1 ? "#bf8700" : "#cf222e", opacity: 0.8,
      });
      add("text", { x: x + slot * 0.45, y: t >= 0 ? mid - th - 4 : mid + th + 12 },
        data.schubert.delta_tilde[k]);
    }
  });
  if (tilde) {
    const y = mid - (mid - 24) / 2;
    add("line", { x1: 20, x2: width - 10, y1: y, y2: y, stroke: "#bf8700", "stroke-dasharray": "4 3" });
    add("text", { x: width - 60, y: y - 4 }, "c~ = 1");
  }
}

function drawGamma(data) {
  const rows = data.b.map((b, k) =>
    `<tr><td>${k + 1}</td><td>${data.word[k]}</td><td>${rootString(data.gamma[k])}</td>` +
    `<td>${rootString(data.gamma_coroot[k], "v")}</td><td>${b}</td>` +
    `<td>${data.K_bs[k]}</td><td>${data.anticanonical_bs[k]}</td></tr>`).join("");
  $("gamma").innerHTML =
    "<tr><th>i</th><th>letter</th><th>gamma</th><th>gamma^v</th><th>b</th><th>K~</th><th>-K~</th></tr>" + rows;
}

function drawSchubert(data, m) {
  const box = $("schubert");
  if (!data.reduced) {
    const neg = data.non_positive_b.length ? ` b_i is non-positive at positions ${data.non_positive_b.join(", ")}.` : "";
    box.innerHTML = `<p>The word is not reduced (element length ${data.length}); only the Bott-Samelson side is defined.${neg}</p>`;
    return;
  }
  const [cert, err] = call(certify, $("type").value, $("word").value, m);
  if (err) {
    box.innerHTML = `<p class="error">${err}</p>`;
    return;
  }
  const rows = cert.divisors.map((d, j) =>
    `<tr><td>(${d.label.join(",")})</td><td>${d.position}</td><td>${d.a}</td>` +
    `<td>${cert.K_schubert[j]}</td><td>${cert.delta[j]}</td></tr>`).join("");
  const checks = Object.entries(cert.checks).map(([k, v]) =>
    `<li class="${v ? "ok" : "fail"}">${v ? "ok" : "FAIL"} ${k}</li>`).join("");
  box.innerHTML =
    `<p>M = ${cert.M}; collapsed positions: ${cert.collapsed.join(", ") || "none"}</p>` +
    "<table><tr><th>label</th><th>position</th><th>a</th><th>K</th><th>delta</th></tr>" + rows + "</table>" +
    `<ul>${checks}</ul><p><b>overall: <span class="${cert.overall ? "ok" : "fail"}">${cert.overall}</span></b></p>`;
}

function refresh() {
  $("error").textContent = "";
  const m = Number($("m").value) || 0;
  const [data, err] = call(report, $("type").value, $("word").value, m);
  if (err) {
    $("error").textContent = err;
    return;
  }
  drawBars(data);
  drawGamma(data);
  drawSchubert(data, m);
}

function runSweep() {
  const [data, err] = call(sweep, $("type").value, Number($("sweep-len").value), Number($("sweep-offset").value));
  $("sweep-out").textContent = err ?? JSON.stringify(data, null, 2);
}

await init();
$("type").onchange = () => { setupNodes(); refresh(); };
$("word").oninput = refresh;
$("m").oninput = refresh;
$("undo").onclick = () => {
  $("word").value = $("word").value.split(",").slice(0, -1).join(",");
  refresh();
};
$("clear").onclick = () => { $("word").value = ""; refresh(); };
$("run-sweep").onclick = runSweep;
setupNodes();
refresh();
