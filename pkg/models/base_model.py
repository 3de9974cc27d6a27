"""
Base model class to be inherited by the serializable value types.
Provides the common JSON plumbing used by reports.
"""

import json
from abc import ABC, abstractmethod


class BaseModel(ABC):
    """Base class for immutable values that appear in reports."""

    @abstractmethod
    def to_dict(self):
        """Convert the value to plain JSON-compatible data.

        Returns:
            dict: Serializable representation
        """

    def to_json(self, indent=None):
        """Serialize the value deterministically.

        Args:
            indent (int, optional): Indentation passed to json.dumps

        Returns:
            str: JSON text with sorted keys
        """
        return json.dumps(self.to_dict(), sort_keys=True, indent=indent, ensure_ascii=False)
