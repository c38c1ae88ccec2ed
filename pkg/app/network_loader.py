import json
import logging
from pathlib import Path
from typing import List, Union

import aiofiles
from pydantic import ValidationError

from app.config import settings
from app.exceptions import NetworkFileNotFoundError, NetworkParseError, NetworkValidationError
from app.models import NetworkFile
from app.simulation.network import NetworkModel

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class NetworkLoader:
    """Reads and writes the JSON network format"""

    @staticmethod
    def resolve(path: PathLike) -> Path:
        """
        Locate a network file.

        A path that exists is used as given; a bare name such as ``feeder12``
        or ``feeder12.json`` is looked up in FEEDER_DATA_DIR.

        Raises:
            NetworkFileNotFoundError: nothing matches
        """
        candidate = Path(path)
        if candidate.is_file():
            return candidate
        if candidate.parent == Path("."):
            names = [candidate.name] if candidate.suffix else [candidate.name + ".json", candidate.name]
            for name in names:
                bundled = settings.DATA_DIR / name
                if bundled.is_file():
                    return bundled
        raise NetworkFileNotFoundError(f"Network file not found: {path}", str(path))

    @staticmethod
    def parse(text: str, source: str = "<string>") -> NetworkModel:
        """
        Parse and validate network JSON.

        Raises:
            NetworkParseError: invalid JSON (with line/column) or a schema error (with the field path)
            NetworkValidationError: a NetworkModel invariant is broken
        """
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise NetworkParseError(f"{source}:{e.lineno}:{e.colno}: invalid JSON: {e.msg}",
                                    source, line=e.lineno, column=e.colno) from e

        try:
            document = NetworkFile.model_validate(data)
        except ValidationError as e:
            error = e.errors()[0]
            field = ".".join(str(part) for part in error["loc"])
            raise NetworkParseError(f"{source}: field '{field}': {error['msg']}",
                                    source, field=field) from e

        try:
            return document.to_model(default_name=Path(source).stem)
        except NetworkValidationError as e:
            e.path = source
            raise

    @staticmethod
    def _decode_error(path: Path, error: UnicodeDecodeError) -> NetworkParseError:
        return NetworkParseError(f"{path}: not valid UTF-8 (byte {error.start}): {error.reason}", str(path))

    @staticmethod
    def load(path: PathLike) -> NetworkModel:
        resolved = NetworkLoader.resolve(path)
        try:
            text = resolved.read_text(encoding="utf-8")
        except UnicodeDecodeError as e:
            raise NetworkLoader._decode_error(resolved, e) from e
        network = NetworkLoader.parse(text, str(resolved))
        logger.info("loaded %s", network.summary())
        return network

    @staticmethod
    async def load_async(path: PathLike) -> NetworkModel:
        resolved = NetworkLoader.resolve(path)
        try:
            async with aiofiles.open(resolved, "r", encoding="utf-8") as file:
                text = await file.read()
        except UnicodeDecodeError as e:
            raise NetworkLoader._decode_error(resolved, e) from e
        network = NetworkLoader.parse(text, str(resolved))
        logger.info("loaded %s", network.summary())
        return network

    @staticmethod
    def dumps(network: NetworkModel) -> str:
        """Canonical text: sorted keys, two-space indent, trailing newline"""
        document = NetworkFile.from_model(network)
        payload = document.model_dump(by_alias=True, exclude_none=True)
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    @staticmethod
    def dump(network: NetworkModel, path: PathLike) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(NetworkLoader.dumps(network), encoding="utf-8")
        return path


def load_network(path: PathLike) -> NetworkModel:
    """Load, validate and return the network stored at path (or a bundled name)"""
    return NetworkLoader.load(path)


async def load_network_async(path: PathLike) -> NetworkModel:
    return await NetworkLoader.load_async(path)


def dump_network(network: NetworkModel, path: PathLike) -> Path:
    return NetworkLoader.dump(network, path)


def list_bundled_networks() -> List[str]:
    """Names of the network files in FEEDER_DATA_DIR"""
    if not settings.DATA_DIR.is_dir():
        return []
    return sorted(p.stem for p in settings.DATA_DIR.glob("*.json"))
