"""
Instance store module - reads and writes NK instances as self-describing npz containers.

Container layout (format version 1), one numpy array per field, no pickled objects:

    format_version  int64 scalar, currently 1
    n, k, seed      int64 scalars (seed is -1 for hand-built instances)
    prng            unicode scalar naming the generator ("PCG64")
    neighbors       int64 array of shape (n, k)
    tables          float64 array of shape (n, 2^(k+1))
"""
import io
import zipfile

import numpy as np

from landscape.nk_instance import NkInstance, PRNG_NAME

FORMAT_VERSION = 1
FIELDS = ("format_version", "n", "k", "seed", "prng", "neighbors", "tables")


class InstanceFormatError(ValueError):
    """Malformed instance stream; `field` names the offending entry."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


def save_instance(instance):
    """
    Serialize an instance

    Parameters:
    - instance: NkInstance

    Returns:
    - bytes of the npz container
    """
    buffer = io.BytesIO()
    np.savez(
        buffer,
        format_version=np.int64(FORMAT_VERSION),
        n=np.int64(instance.n),
        k=np.int64(instance.k),
        seed=np.int64(-1 if instance.seed is None else instance.seed),
        prng=np.array(PRNG_NAME),
        neighbors=np.asarray(instance.neighbors, dtype=np.int64),
        tables=np.asarray(instance.tables, dtype=np.float64),
    )
    return buffer.getvalue()


def _scalar(arrays, field):
    value = arrays[field]
    if value.shape != () or value.dtype.kind not in "iu":
        raise InstanceFormatError(field, f"expected an integer scalar, got {value.dtype} {value.shape}")
    return int(value)


def load_instance(data):
    """
    Parse an instance from bytes produced by save_instance

    Parameters:
    - data: bytes

    Returns:
    - NkInstance
    """
    try:
        archive = np.load(io.BytesIO(data), allow_pickle=False)
        arrays = {name: archive[name] for name in archive.files}
    except (zipfile.BadZipFile, EOFError, OSError, ValueError) as e:
        raise InstanceFormatError("container", f"unreadable stream ({e})") from e

    for field in FIELDS:
        if field not in arrays:
            raise InstanceFormatError(field, "missing")

    version = _scalar(arrays, "format_version")
    if version != FORMAT_VERSION:
        raise InstanceFormatError("format_version", f"unsupported version {version}")
    n, k, seed = _scalar(arrays, "n"), _scalar(arrays, "k"), _scalar(arrays, "seed")
    if n < 1 or not 0 <= k < n:
        raise InstanceFormatError("k", f"invalid header n={n}, k={k}")
    if str(arrays["prng"]) != PRNG_NAME:
        raise InstanceFormatError("prng", f"unknown generator {arrays['prng']!s}")

    neighbors, tables = arrays["neighbors"], arrays["tables"]
    if neighbors.shape != (n, k):
        raise InstanceFormatError("neighbors", f"shape {neighbors.shape} does not match header ({n}, {k})")
    if tables.shape != (n, 2 ** (k + 1)) or tables.dtype != np.float64:
        raise InstanceFormatError("tables", f"{tables.dtype} {tables.shape} does not match header ({n}, {2 ** (k + 1)})")

    try:
        return NkInstance(n, k, neighbors, tables, seed=None if seed < 0 else seed)
    except ValueError as e:
        raise InstanceFormatError("neighbors" if "neighbors" in str(e) else "tables", str(e)) from e


def write_instance(instance, path):
    with open(path, "wb") as f:
        f.write(save_instance(instance))


def read_instance(path):
    with open(path, "rb") as f:
        return load_instance(f.read())
