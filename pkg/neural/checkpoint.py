"""
Checkpoint module - debugging dumps of a VaeModel and its optimizer state.

The npz container holds `meta` (int64: n, hidden_size, latent_dim, step_count), one array per
parameter under its qualified name, `running/<layer>.mean|var` for batch norm statistics and
`nadam/m/<name>`, `nadam/v/<name>` for the optimizer moments.
"""
import io

import numpy as np

from neural.nadam import NadamState
from neural.vae_model import VaeModel


def dump_checkpoint(model):
    arrays = {}
    optimizer = getattr(model, "optimizer", None)
    arrays["meta"] = np.array([model.n, model.hidden_size, model.latent_dim,
                               optimizer.step_count if optimizer else 0], dtype=np.int64)
    if optimizer is not None:
        arrays["nadam_hyper"] = np.array([optimizer.alpha, optimizer.beta1, optimizer.beta2, optimizer.epsilon])
        for name, m in optimizer.first_moment.items():
            arrays[f"nadam/m/{name}"] = m
            arrays[f"nadam/v/{name}"] = optimizer.second_moment[name]
    for name, (layer, attr) in model.parameters().items():
        arrays[name] = getattr(layer, attr)
    for layer_name in ("enc_norm", "dec_norm"):
        layer = getattr(model, layer_name)
        arrays[f"running/{layer_name}.mean"] = layer.running_mean
        arrays[f"running/{layer_name}.var"] = layer.running_var

    buffer = io.BytesIO()
    np.savez(buffer, **arrays)
    return buffer.getvalue()


def load_checkpoint(data):
    archive = np.load(io.BytesIO(data), allow_pickle=False)
    n, hidden_size, latent_dim, step_count = (int(v) for v in archive["meta"])
    model = VaeModel(n, hidden_size, latent_dim)
    for name, (layer, attr) in model.parameters().items():
        setattr(layer, attr, archive[name].copy())
    for layer_name in ("enc_norm", "dec_norm"):
        layer = getattr(model, layer_name)
        layer.running_mean = archive[f"running/{layer_name}.mean"].copy()
        layer.running_var = archive[f"running/{layer_name}.var"].copy()

    model.optimizer = None
    if "nadam_hyper" in archive.files:
        alpha, beta1, beta2, epsilon = (float(v) for v in archive["nadam_hyper"])
        state = NadamState(alpha, beta1, beta2, epsilon)
        state.step_count = step_count
        for key in archive.files:
            if key.startswith("nadam/m/"):
                name = key[len("nadam/m/"):]
                state.first_moment[name] = archive[key].copy()
                state.second_moment[name] = archive[f"nadam/v/{name}"].copy()
        model.optimizer = state
    return model
