"""
Async file access for circuits, graphs and reports.
"""
import asyncio
import logging
import os
from pathlib import Path
from typing import List, Optional, Sequence, Union

import aiofiles
import aiofiles.os

from src.shared.exceptions import InputError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


async def read_text(path: PathLike) -> str:
    """
    Read a UTF-8 text file.

    Raises:
        InputError: If the file is missing or unreadable
    """
    try:
        async with aiofiles.open(path, "r", encoding="utf-8") as f:
            return await f.read()
    except FileNotFoundError as e:
        raise InputError(f"file not found: {path}") from e
    except (OSError, UnicodeDecodeError) as e:
        raise InputError(f"cannot read {path}: {e}") from e


async def read_optional_text(path: PathLike) -> Optional[str]:
    """Read a file if it exists, otherwise return None."""
    if not await aiofiles.os.path.exists(path):
        return None
    return await read_text(path)


async def read_many(paths: Sequence[PathLike]) -> List[str]:
    """Read several files concurrently; results follow the input order."""
    return list(await asyncio.gather(*(read_text(p) for p in paths)))


async def write_text(path: PathLike, content: str) -> str:
    """
    Write a UTF-8 text file, creating parent directories as needed.

    Returns:
        The path written
    """
    path = str(path)
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    async with aiofiles.open(path, "w", encoding="utf-8") as f:
        await f.write(content)
    logger.debug(f"Wrote {path} ({len(content)} chars)")
    return path
