"""
文件操作工具

提供目录创建、CSV/JSON 写出，以及轨迹、表格的导出。
"""

import json
import math
from pathlib import Path
from typing import Any, Dict, Union
import pandas as pd
import logging

logger = logging.getLogger(__name__)


def ensure_dir(path: Union[str, Path]) -> Path:
    """
    确保目录存在，如果不存在则创建

    Args:
        path: 目录路径

    Returns:
        Path: 目录路径对象
    """
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    return path


def safe_save_csv(
    df: pd.DataFrame,
    file_path: Union[str, Path],
    float_format: str = "%.15g",
    backup: bool = False
) -> None:
    """
    保存 CSV 文件（无索引列），可备份已有文件

    Args:
        df: 要保存的 DataFrame
        file_path: 文件路径
        float_format: 浮点格式
        backup: 是否备份现有文件
    """
    file_path = Path(file_path)
    ensure_dir(file_path.parent)

    if backup and file_path.exists():
        backup_path = file_path.with_suffix(f"{file_path.suffix}.backup")
        file_path.rename(backup_path)
        logger.info(f"Backed up existing file to {backup_path}")

    df.to_csv(file_path, index=False, float_format=float_format)
    logger.info(f"Saved {len(df)} rows to {file_path}")


def _json_safe(value: Any) -> Any:
    # NaN/inf 不是合法 JSON，写为 null
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


def dumps_json(data: Any, indent: int = 2) -> str:
    """序列化为 JSON 字符串（NaN 写为 null）"""
    return json.dumps(_json_safe(data), indent=indent, ensure_ascii=False)


def save_json(
    data: Any,
    file_path: Union[str, Path],
    indent: int = 2
) -> None:
    """
    保存 JSON 文件

    Args:
        data: 要保存的数据
        file_path: 文件路径
        indent: 缩进空格数
    """
    file_path = Path(file_path)
    ensure_dir(file_path.parent)

    with open(file_path, 'w', encoding='utf-8') as f:
        f.write(dumps_json(data, indent=indent))

    logger.info(f"Saved JSON data to {file_path}")


def frame_records(df: pd.DataFrame) -> list:
    """DataFrame 转为记录列表，数值转为 Python 类型"""
    return [
        {k: (v.item() if hasattr(v, "item") else v) for k, v in row.items()}
        for row in df.to_dict(orient="records")
    ]


def table_document(metadata: Dict[str, Any], key: str, df: pd.DataFrame) -> Dict[str, Any]:
    """
    组装带元数据头的 JSON 文档

    Args:
        metadata: 元数据
        key: 记录数组的键名（如 "trajectory"）
        df: 表格

    Returns:
        Dict: {"metadata": ..., key: [...]}
    """
    return {"metadata": metadata, key: frame_records(df)}
