"""
Binary serialization of Mps/Mpo chains.

Layout, all integers little-endian:

    magic       4 bytes  b"SQTN"
    version     u16      1
    kind        u8       0 = Mps, 1 = Mpo
    n           u32      site count
    bond_dims   (n + 1) x u32
    payload     per site, the complex128 ("<c16") entries of the site tensor
                in C order: (left, phys, right) or (left, out, in, right)
"""

import struct
from pathlib import Path
from typing import Union

import numpy as np

from app.core.errors import SerializationError
from app.core.logger import get_logger
from app.tn.chain import PHYSICAL_DIM, Mpo, Mps, TensorChain

logger = get_logger("tn.io")

MAGIC = b"SQTN"
VERSION = 1
_HEADER = struct.Struct("<4sHBI")
_KINDS = {0: Mps, 1: Mpo}


def dumps(chain: TensorChain) -> bytes:
    """Serialize a chain to bytes"""
    kind = 1 if isinstance(chain, Mpo) else 0
    parts = [
        _HEADER.pack(MAGIC, VERSION, kind, chain.n),
        np.asarray(chain.bond_dims, dtype="<u4").tobytes(),
    ]
    parts.extend(np.ascontiguousarray(t, dtype="<c16").tobytes() for t in chain.tensors)
    return b"".join(parts)


def loads(data: bytes) -> TensorChain:
    """
    Deserialize a chain.

    Raises:
        SerializationError: On a bad magic, unknown version or kind, or a
            payload that does not match the header.
    """
    if len(data) < _HEADER.size:
        raise SerializationError(f"header needs {_HEADER.size} bytes, got {len(data)}")
    magic, version, kind, n = _HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise SerializationError(f"bad magic {magic!r}")
    if version != VERSION:
        raise SerializationError(f"unsupported version {version}")
    if kind not in _KINDS:
        raise SerializationError(f"unknown chain kind {kind}")
    cls = _KINDS[kind]
    offset = _HEADER.size
    bonds_end = offset + 4 * (n + 1)
    if len(data) < bonds_end:
        raise SerializationError("truncated bond dimension table")
    bonds = np.frombuffer(data, dtype="<u4", count=n + 1, offset=offset).astype(int)
    offset = bonds_end

    phys = (PHYSICAL_DIM,) * cls.physical_legs
    tensors = []
    for site in range(n):
        shape = (bonds[site],) + phys + (bonds[site + 1],)
        count = int(np.prod(shape))
        if len(data) < offset + 16 * count:
            raise SerializationError(f"truncated payload at site {site}")
        t = np.frombuffer(data, dtype="<c16", count=count, offset=offset).reshape(shape)
        tensors.append(t.astype(np.complex128))
        offset += 16 * count
    if offset != len(data):
        raise SerializationError(f"{len(data) - offset} trailing bytes after the payload")
    try:
        return cls(tensors)
    except ValueError as exc:
        raise SerializationError(f"inconsistent chain: {exc}") from exc


def save(chain: TensorChain, path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(dumps(chain))
    logger.info(f"saved {chain!r} to {path}")


def load(path: Union[str, Path]) -> TensorChain:
    return loads(Path(path).read_bytes())
