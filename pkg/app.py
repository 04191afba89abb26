"""
isokit
等方3次元空間 I³ の曲面・曲線の微分幾何と定理検証のコマンドラインツール

ログ設定を行ってから ui.cli にディスパッチします。
"""

import datetime
import logging
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from ui.cli import main as cli_main

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s"


def setup_logging() -> Path:
    """
    標準エラー出力と日付別ログファイルへのログ設定

    DEBUG=1 で DEBUG レベル、ISOKIT_LOG_DIR でログディレクトリを変更します。

    Returns:
        Path: ログファイルのパス
    """
    log_level = logging.DEBUG if os.getenv("DEBUG") == "1" else logging.INFO
    log_directory = Path(os.getenv("ISOKIT_LOG_DIR", "logs"))
    log_directory.mkdir(parents=True, exist_ok=True)
    log_filename = log_directory / f"isokit_{datetime.datetime.now().strftime('%Y%m%d')}.log"
    handlers = [
        logging.StreamHandler(sys.stderr),
        logging.FileHandler(log_filename, encoding="utf-8"),
    ]
    logging.basicConfig(level=log_level, format=LOG_FORMAT, handlers=handlers, force=True)
    logging.getLogger(__name__).info(f"🚀 isokit 開始 (ログレベル: {logging.getLevelName(log_level)})")
    return log_filename


def main(argv: Optional[Sequence[str]] = None) -> int:
    setup_logging()
    return cli_main(argv)


if __name__ == "__main__":
    sys.exit(main())
