import init, { basisNames, flagCurve, indicatrix, summary } from './pkg/finsler_lie_demo.js';

const SPACES = ['su2xr', 'e2', 'alpha', 'abelian'];
const SAMPLES = 180;
const $ = (id) => document.getElementById(id);

function fillSelect(sel, options, chosen) {
  sel.innerHTML = '';
  options.forEach((name, k) => {
    const opt = document.createElement('option');
    opt.value = k;
    opt.textContent = name;
    sel.appendChild(opt);
  });
  sel.value = Math.min(chosen, options.length - 1);
}

function drawCurve(canvas, theta, direct, closed, sectional) {
  const ctx = canvas.getContext('2d');
  const { width: w, height: h } = canvas;
  ctx.clearRect(0, 0, w, h);
  const finite = [...direct, ...closed, sectional].filter(Number.isFinite);
  if (finite.length === 0) return;
  let lo = Math.min(...finite), hi = Math.max(...finite);
  if (hi - lo < 1e-6) { lo -= 0.1; hi += 0.1; }
  const pad = 0.08 * (hi - lo);
  lo -= pad; hi += pad;
  const m = 40;
  const x = (t) => m + (w - 2 * m) * t / (2 * Math.PI);
  const y = (k) => h - m - (h - 2 * m) * (k - lo) / (hi - lo);

  ctx.strokeStyle = '#999';
  ctx.fillStyle = '#444';
  ctx.font = '11px sans-serif';
  ctx.beginPath();
  ctx.moveTo(m, m); ctx.lineTo(m, h - m); ctx.lineTo(w - m, h - m);
  ctx.stroke();
  for (const k of [lo + pad, (lo + hi) / 2, hi - pad]) {
    ctx.fillText(k.toFixed(4), 2, y(k) + 4);
  }
  ctx.fillText('0', x(0) - 3, h - m + 14);
  ctx.fillText('2π', x(2 * Math.PI) - 8, h - m + 14);

  ctx.strokeStyle = '#bbb';
  ctx.beginPath();
  ctx.moveTo(x(0), y(sectional)); ctx.lineTo(x(2 * Math.PI), y(sectional));
  ctx.stroke();

  ctx.strokeStyle = '#1565c0';
  ctx.lineWidth = 2;
  ctx.beginPath();
  theta.forEach((t, i) => {
    if (!Number.isFinite(direct[i])) return;
    i === 0 ? ctx.moveTo(x(t), y(direct[i])) : ctx.lineTo(x(t), y(direct[i]));
  });
  ctx.stroke();
  ctx.lineWidth = 1;

  ctx.fillStyle = '#e65100';
  theta.forEach((t, i) => {
    if (i % 6 !== 0 || !Number.isFinite(closed[i])) return;
    ctx.beginPath();
    ctx.arc(x(t), y(closed[i]), 2.5, 0, 2 * Math.PI);
    ctx.fill();
  });
}

function drawIndicatrix(canvas, pts) {
  const ctx = canvas.getContext('2d');
  const { width: w, height: h } = canvas;
  ctx.clearRect(0, 0, w, h);
  let r = 1;
  for (const v of pts) r = Math.max(r, Math.abs(v));
  const s = (w / 2 - 20) / r;
  const px = (v) => w / 2 + s * v;
  const py = (v) => h / 2 - s * v;

  ctx.strokeStyle = '#ddd';
  ctx.beginPath();
  ctx.moveTo(0, h / 2); ctx.lineTo(w, h / 2);
  ctx.moveTo(w / 2, 0); ctx.lineTo(w / 2, h);
  ctx.stroke();

  ctx.strokeStyle = '#aaa';
  ctx.beginPath();
  ctx.arc(w / 2, h / 2, s, 0, 2 * Math.PI);
  ctx.stroke();

  ctx.strokeStyle = '#1565c0';
  ctx.lineWidth = 2;
  ctx.beginPath();
  for (let i = 0; i < pts.length; i += 2) {
    i === 0 ? ctx.moveTo(px(pts[i]), py(pts[i + 1])) : ctx.lineTo(px(pts[i]), py(pts[i + 1]));
  }
  ctx.closePath();
  ctx.stroke();
  ctx.lineWidth = 1;
}

function clear(canvas) {
  canvas.getContext('2d').clearRect(0, 0, canvas.width, canvas.height);
}

function update() {
  const name = $('space').value;
  const u = Number($('u').value);
  const tilt = Number($('tilt').value);
  const [a, b, c] = ['a', 'b', 'c'].map((id) => Number($(id).value));
  $('u-val').textContent = u.toFixed(3);
  $('tilt-val').textContent = tilt.toFixed(2);
  $('error').textContent = '';

  try {
    $('summary').textContent = summary(name, u);
  } catch (e) {
    $('summary').textContent = '';
    $('error').textContent = String(e.message ?? e);
    return;
  }
  try {
    const out = flagCurve(name, u, a, b, c, tilt, SAMPLES);
    drawCurve($('curve'), out.slice(0, SAMPLES), out.slice(SAMPLES, 2 * SAMPLES),
      out.slice(2 * SAMPLES, 3 * SAMPLES), out[3 * SAMPLES]);
  } catch (e) {
    clear($('curve'));
    $('error').textContent = String(e.message ?? e);
  }
  try {
    drawIndicatrix($('indicatrix'), indicatrix(name, u, a, b, 240));
  } catch (e) {
    clear($('indicatrix'));
    $('error').textContent = String(e.message ?? e);
  }
}

function chooseSpace() {
  const names = basisNames($('space').value);
  fillSelect($('a'), names, 0);
  fillSelect($('b'), names, 1);
  fillSelect($('c'), names, names.length - 1);
  update();
}

await init();
SPACES.forEach((name) => {
  const opt = document.createElement('option');
  opt.value = name;
  opt.textContent = name;
  $('space').appendChild(opt);
});
$('space').addEventListener('change', chooseSpace);
for (const id of ['u', 'tilt', 'a', 'b', 'c']) {
  $(id).addEventListener('input', update);
}
chooseSpace();
