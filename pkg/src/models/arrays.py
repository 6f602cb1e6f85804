"""Annotated numpy array types for pydantic models.

Arrays are validated into read-only copies and serialized to nested lists,
complex entries as ``[re, im]`` pairs.
"""

from typing import Annotated, Any, List

import numpy as np
from pydantic import PlainSerializer, PlainValidator


def _readonly(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


def _to_float_array(value: Any) -> np.ndarray:
    return _readonly(np.array(value, dtype=np.float64))


def _to_spin_array(value: Any) -> np.ndarray:
    array = np.array(value)
    if array.size and not np.all(np.isin(array, (-1, 1))):
        raise ValueError("spin entries must be +1 or -1")
    return _readonly(array.astype(np.int64))


def _to_complex_array(value: Any) -> np.ndarray:
    if isinstance(value, np.ndarray) and np.iscomplexobj(value):
        return _readonly(np.array(value, dtype=np.complex128))
    array = np.asarray(value)
    if array.dtype.kind in "fiu" and array.ndim == 3 and array.shape[-1] == 2:
        # [re, im] pairs from JSON
        array = np.asarray(array, dtype=np.float64)
        return _readonly(array[..., 0] + 1j * array[..., 1])
    return _readonly(np.array(value, dtype=np.complex128))


def _float_list(array: np.ndarray) -> List[Any]:
    return np.asarray(array, dtype=np.float64).tolist()


def _complex_list(array: np.ndarray) -> List[Any]:
    array = np.asarray(array)
    return np.stack([array.real, array.imag], axis=-1).tolist()


FloatArray = Annotated[np.ndarray, PlainValidator(_to_float_array), PlainSerializer(_float_list, return_type=list)]
SpinArray = Annotated[np.ndarray, PlainValidator(_to_spin_array), PlainSerializer(lambda a: a.tolist(), return_type=list)]
ComplexArray = Annotated[np.ndarray, PlainValidator(_to_complex_array), PlainSerializer(_complex_list, return_type=list)]
