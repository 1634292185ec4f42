import logging
import os
import json
from types import SimpleNamespace

version = '0.1'

core_logger = logging.getLogger('cubewalk.core')
walk_logger = logging.getLogger('cubewalk.walk')
circuit_logger = logging.getLogger('cubewalk.circuit')
hitting_logger = logging.getLogger('cubewalk.hitting')


class IndexableNamespace(SimpleNamespace):
    def __len__(self):
        return len(self.__dict__)

    def __getitem__(self, key):
        return self.__dict__[key]

    def get(self, key, default=None):
        try:
            return self.__dict__[key]
        except KeyError:
            return default


def _parse_scalar(text: str):
    """ Interpret a config value as int, float or bool when possible, else keep the string. """
    lowered = text.lower()
    if lowered in ('true', 'yes', 'on'):
        return True
    if lowered in ('false', 'no', 'off'):
        return False
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    return text


class Settings(IndexableNamespace):
    default_settings = {
        'limits': {
            # largest n+m accepted by the walk engine (2^30 amplitudes)
            'max_wires': 30,
            'executor_wires': 26,
            'dense_wires': 12
        },
        'tolerances': {
            'norm': 1e-10,
            'padding': 1e-12,
            'equivalence': 1e-10,
            # target probabilities closer than this count as a tie
            'tie': 1e-12
        },
        'sweep': {
            'workers': 0,
            'window_padding': 5
        }
    }

    @classmethod
    def from_json(cls, json: dict):
        o = cls(**json)
        o._convert(o.__dict__, o.__dict__)
        return o

    @classmethod
    def from_file(cls, path_to_json: str):
        """ Settings from a JSON file of sections, layered over the defaults. """
        with open(path_to_json, 'r') as f:
            data = json.load(f)
        o = cls.from_json(json.loads(json.dumps(cls.default_settings)))
        o.register(data)
        return o

    @classmethod
    def from_text(cls, text: str):
        """
        Create settings from flat ``section.key=value`` lines on top of the defaults.

        Args:
            text: configuration text. Empty lines and everything after ``#`` are ignored.

        Raises:
            ValueError: if a line is not of the form ``section.key=value``.
        """
        o = cls.from_json(json.loads(json.dumps(cls.default_settings)))
        o.register_text(text)
        return o

    def register(self, json: dict):
        """ Merge sections into the settings. Keys a section does not mention keep their value. """
        for section, values in json.items():
            current = self.__dict__.get(section)
            if isinstance(values, dict) and isinstance(current, IndexableNamespace):
                current.__dict__.update(values)
            else:
                self.__dict__[section] = values
        self._convert(self.__dict__, self.__dict__)

    def register_text(self, text: str) -> None:
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition('=')
            section, dot, name = key.strip().partition('.')
            if not sep or not dot or not name:
                raise ValueError(f"Invalid settings line {lineno}: expected 'section.key=value', got {raw!r}")
            if section not in self.__dict__:
                self.__dict__[section] = IndexableNamespace()
            self.__dict__[section].__dict__[name] = _parse_scalar(value.strip())

    def _convert(self, what: dict, where: dict):
        # turn all _dictionary what into IndexableNamespaces
        to_update = []
        for k, v in what.items():
            if isinstance(v, dict):
                to_update.append((k, IndexableNamespace(**v)))

        for k, v in to_update:
            if isinstance(where, dict):
                where.update({k: v})
            else:
                where.__dict__.update({k: v})
            self._convert(where[k].__dict__, where[k].__dict__)

    @property
    def worker_count(self) -> int:
        """
        Number of worker threads for sweeps.

        An explicit ``sweep.workers`` wins, otherwise the ``CUBEWALK_THREADS`` environment variable caps the CPU
        count.
        """
        configured = int(self.sweep.workers)
        if configured > 0:
            return configured
        cpus = os.cpu_count() or 1
        env = os.environ.get('CUBEWALK_THREADS')
        if env:
            try:
                return max(1, min(cpus, int(env)))
            except ValueError:
                core_logger.debug(f"Ignoring invalid CUBEWALK_THREADS value {env!r}")
        return cpus

    def reset_settings_to_default(self):
        self.__dict__.clear()
        self.__dict__.update(self.from_json(json.loads(json.dumps(self.default_settings))).__dict__)


settings = Settings.from_json(json.loads(json.dumps(Settings.default_settings)))
