from pydantic import BaseModel, ConfigDict


class Base(BaseModel):
    """
    Base class for all configuration-like models in the project.
    Instances are immutable and reject unknown keys, so a typo in a run
    configuration file fails validation instead of being ignored.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    def __repr__(self):
        fields = ", ".join(f"{name}={getattr(self, name)!r}" for name in type(self).model_fields)
        return f"{self.__class__.__name__}({fields})"

    def __str__(self):
        return self.__repr__()
