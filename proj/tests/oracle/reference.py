# Copyright 2026 The ffsn Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Float64 NumPy reference for the frame graph; writes the test fixtures.

Shares no code with the engine. Weight files and bundles are encoded here
from the format description, so a successful load in the C++ tests also
checks the encoder side of the format.

    python3 tests/oracle/reference.py tests/fixtures
"""

import struct
import sys
import zlib
from pathlib import Path

import numpy as np

SEED = 20260
SR = 16000

# Reduced config: F, F_mel, N, tau, l2m, sub, m2l hidden sizes.
SMALL = dict(F=17, F_mel=6, N=2, tau=2, l2m=(8, 6), sub=(5, 4), m2l=(7, 6))
FRAMES = 10


# ---------------------------------------------------------------- encoding


def encode_tensor(name, array):
  a = np.ascontiguousarray(array, dtype="<f4")
  out = struct.pack("<I", len(name)) + name.encode("ascii")
  out += struct.pack("<I", a.ndim) + struct.pack(f"<{a.ndim}I", *a.shape)
  return out + a.tobytes()


def with_crc(body):
  return body + struct.pack("<I", zlib.crc32(body) & 0xFFFFFFFF)


def encode_bundle(tensors):
  body = b"FFST" + struct.pack("<II", 1, len(tensors))
  for name, a in tensors:
    body += encode_tensor(name, a)
  return with_crc(body)


def encode_weights(cfg, sub_present, tensors):
  fields = [cfg["F"], cfg["F_mel"], cfg["N"], cfg["tau"], *cfg["l2m"],
            *cfg["sub"], *cfg["m2l"], int(sub_present)]
  body = b"FFSN" + struct.pack("<I", 1) + struct.pack("<11I", *fields)
  body += struct.pack("<I", len(tensors))
  for name, a in tensors:
    body += encode_tensor(name, a)
  return with_crc(body)


# ------------------------------------------------------------------- model


def mel_filterbank(num_bins, num_mel, sr=SR, fmin=0.0, fmax=SR / 2):
  hz_to_mel = lambda f: 2595.0 * np.log10(1.0 + f / 700.0)
  mel_to_hz = lambda m: 700.0 * (10.0**(m / 2595.0) - 1.0)
  pts = mel_to_hz(np.linspace(hz_to_mel(fmin), hz_to_mel(fmax), num_mel + 2))
  freqs = np.arange(num_bins) * sr / (2 * (num_bins - 1))
  fb = np.zeros((num_mel, num_bins))
  for r in range(num_mel):
    lo, c, hi = pts[r], pts[r + 1], pts[r + 2]
    up = (freqs - lo) / (c - lo)
    down = (hi - freqs) / (hi - c)
    fb[r] = np.maximum(0.0, np.minimum(up, down))
    assert fb[r].max() > 0
  return fb


def f32(a):
  """Round to float32 and back so the reference sees the stored values."""
  return np.asarray(a, dtype=np.float32).astype(np.float64)


def random_stack(rng, d_in, hidden, d_out, prefix):
  tensors = []
  layers = []
  for l, h in enumerate(hidden):
    b = 1.0 / np.sqrt(h)
    wi = f32(rng.uniform(-b, b, (4 * h, d_in)))
    wr = f32(rng.uniform(-b, b, (4 * h, h)))
    bi = f32(rng.uniform(-b, b, 4 * h))
    br = f32(rng.uniform(-b, b, 4 * h))
    base = f"{prefix}.lstm{l}."
    tensors += [(base + "w_input", wi), (base + "w_recurrent", wr),
                (base + "bias_input", bi), (base + "bias_recurrent", br)]
    layers.append((wi, wr, bi, br))
    d_in = h
  b = 1.0 / np.sqrt(d_in)
  w = f32(rng.uniform(-b, b, (d_out, d_in)))
  bias = f32(rng.uniform(-b, b, d_out))
  tensors += [(prefix + ".affine.weight", w), (prefix + ".affine.bias", bias)]
  return tensors, (layers, (w, bias))


def sigmoid(z):
  return 1.0 / (1.0 + np.exp(-z))


def lstm_step(layer, x, h, c):
  """Gate blocks [i, f, g, o]; works on a batch of rows."""
  wi, wr, bi, br = layer
  z = x @ wi.T + h @ wr.T + bi + br
  n = h.shape[-1]
  i, f, g, o = (z[..., k * n:(k + 1) * n] for k in range(4))
  c = sigmoid(f) * c + sigmoid(i) * np.tanh(g)
  h = sigmoid(o) * np.tanh(c)
  return h, c


class Stack:

  def __init__(self, params, batch):
    self.layers, (self.w, self.b) = params
    self.state = [(np.zeros((batch, l[1].shape[1])),) * 2 for l in self.layers]

  def __call__(self, x):
    for k, layer in enumerate(self.layers):
      h, c = lstm_step(layer, x, *self.state[k])
      self.state[k] = (h, c)
      x = h
    return x @ self.w.T + self.b


def assemble(mel, emb, n):
  fm = len(mel)
  rows = []
  for f in range(fm):
    idx = [abs(f + k) for k in range(-n, n + 1)]
    idx = [2 * (fm - 1) - i if i >= fm else i for i in idx]
    rows.append(np.concatenate([mel[idx], [emb[f]]]))
  return np.array(rows)


def cirm_decompress(o, k=10.0, c=0.1):
  o = np.clip(o, -(k - 1e-4), k - 1e-4)
  return -np.log((k - o) / (k + o)) / c


def forward(cfg, fb, params, noisy, m):
  """Returns per-step traces and the enhanced spectrogram. m=None is inf."""
  t_frames, nb = noisy.shape
  fm, tau = cfg["F_mel"], cfg["tau"]
  l2m = Stack(params["l2m"], 1)
  m2l = Stack(params["m2l"], 1)
  sub = Stack(params["sub"], fm) if m else None
  held = np.zeros(fm) if m else np.zeros(0)
  total, count = 0.0, 0
  block = []
  trace = {k: [] for k in ("mel", "normalized_mel", "embedding", "subband",
                           "mask")}
  enhanced = np.zeros_like(noisy)
  steps = t_frames + tau
  sub_steps = 0
  for t in range(steps):
    frame = noisy[t] if t < t_frames else np.zeros(nb, complex)
    mel = fb @ np.abs(frame)
    total += mel.sum()
    count += mel.size
    norm = mel / (total / count + 1e-10)
    emb = l2m(norm[None])[0]
    if m:
      block.append(assemble(norm, emb, cfg["N"]))
      if (t + 1) % m == 0 or t == steps - 1:
        held = sub(np.mean(block, axis=0))[:, 0]
        block = []
        sub_steps += 1
    mask = m2l(np.concatenate([emb, held])[None])[0]
    for key, v in zip(trace, (mel, norm, emb, held, mask)):
      trace[key].append(v)
    if t >= tau:
      mr, mi = cirm_decompress(mask[0::2]), cirm_decompress(mask[1::2])
      enhanced[t - tau] = (mr + 1j * mi) * noisy[t - tau]
  return {k: np.array(v) for k, v in trace.items()}, enhanced, sub_steps


# ---------------------------------------------------------------- fixtures


def model_tensors(cfg, rng, sub_present):
  fb = mel_filterbank(cfg["F"], cfg["F_mel"])
  tensors = [("mel.filterbank", fb)]
  params = {}
  fm = cfg["F_mel"]
  t, params["l2m"] = random_stack(rng, fm, cfg["l2m"], fm, "l2m")
  tensors += t
  if sub_present:
    t, params["sub"] = random_stack(rng, 2 * cfg["N"] + 2, cfg["sub"], 1, "sub")
    tensors += t
  t, params["m2l"] = random_stack(rng, 2 * fm if sub_present else fm,
                                  cfg["m2l"], 2 * cfg["F"], "m2l")
  tensors += t
  return f32(fb), params, tensors


def graph_bundle(cfg, fb, params, noisy, m):
  trace, enhanced, sub_steps = forward(cfg, fb, params, noisy, m)
  tensors = [("noisy_real", noisy.real), ("noisy_imag", noisy.imag)]
  tensors += [(k, v) for k, v in trace.items() if v.size]
  tensors += [("enhanced_real", enhanced.real),
              ("enhanced_imag", enhanced.imag),
              ("subband_steps", np.array([sub_steps], float))]
  return encode_bundle(tensors)


def lstm_bundle(rng):
  d_in, h = 3, 2
  _, (layers, _) = random_stack(rng, d_in, (h,), 1, "x")
  wi, wr, bi, br = layers[0]
  xs = f32(rng.uniform(-1, 1, (3, d_in)))
  hs, cs = [], []
  hv, cv = np.zeros(h), np.zeros(h)
  for x in xs:
    hv, cv = lstm_step(layers[0], x, hv, cv)
    hs.append(hv)
    cs.append(cv)
  return encode_bundle([("w_input", wi), ("w_recurrent", wr),
                        ("bias_input", bi), ("bias_recurrent", br),
                        ("x", xs), ("h", np.array(hs)), ("c", np.array(cs))])


def main(out_dir):
  out = Path(out_dir)
  out.mkdir(parents=True, exist_ok=True)
  rng = np.random.default_rng(SEED)
  cfg = SMALL

  fb, params, tensors = model_tensors(cfg, rng, True)
  (out / "small.ffsn").write_bytes(encode_weights(cfg, True, tensors))
  fb_inf, params_inf, tensors_inf = model_tensors(cfg, rng, False)
  (out / "small_inf.ffsn").write_bytes(encode_weights(cfg, False, tensors_inf))

  noisy = f32(rng.normal(0, 1, (FRAMES, cfg["F"]))) + 1j * f32(
      rng.normal(0, 1, (FRAMES, cfg["F"])))
  for m in (1, 2, 4):
    (out / f"graph_m{m}.ffst").write_bytes(
        graph_bundle(cfg, fb, params, noisy, m))
  (out / "graph_minf.ffst").write_bytes(
      graph_bundle(cfg, fb_inf, params_inf, noisy, None))
  (out / "lstm_sequence.ffst").write_bytes(lstm_bundle(rng))


if __name__ == "__main__":
  main(sys.argv[1] if len(sys.argv) > 1 else "tests/fixtures")
