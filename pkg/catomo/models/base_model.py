import logging
import re
from typing import Any, Dict

import numpy as np
from pydantic import BaseModel as PydanticModel, ConfigDict


logger = logging.getLogger(__name__)


def frozen_array(value: Any, dtype: type, ndim: int, name: str) -> np.ndarray:
    """Copy `value` into a read-only array of the given dtype and rank."""
    arr = np.array(value, dtype=dtype, copy=True)
    if arr.ndim != ndim:
        raise ValueError(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError(f"{name} must not be empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    arr.setflags(write=False)
    return arr


class BaseModel(PydanticModel):
    """
    Base class for catomo value types.
    Instances are immutable; array fields are stored as read-only copies so a
    value can be shared between threads without coordination.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    class Meta:
        """Meta class for report serialization."""

        block_name: str = ""

    def __init_subclass__(cls, **kwargs):
        """Infer the key=value block name from the class name if not given."""
        super().__init_subclass__(**kwargs)
        if "Meta" not in cls.__dict__ or not cls.Meta.block_name:
            snake = re.sub(r"(?<!^)(?=[A-Z])", "_", cls.__name__).lower()
            cls.Meta = type("Meta", (), {"block_name": snake})

    def to_kv(self) -> str:
        """Render scalar fields as a plain-text `key=value` block."""
        lines = [f"[{self.Meta.block_name}]"]
        for key, value in self._kv_items().items():
            lines.append(f"{key}={value}")
        return "\n".join(lines) + "\n"

    def _kv_items(self) -> Dict[str, Any]:
        items = {}
        for key in type(self).model_fields:
            value = getattr(self, key)
            if isinstance(value, float):
                items[key] = repr(value)
            elif isinstance(value, (int, str, bool)) or value is None:
                items[key] = value
            elif isinstance(value, PydanticModel):
                for sub_key, sub_value in value.model_dump().items():
                    items[f"{key}.{sub_key}"] = sub_value
        return items
