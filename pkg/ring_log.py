"""
Console + file logging for the graded ring toolkit.

Tagged console lines ([INFO], [WARN], [ERR]) and an append-only error log
with tracebacks next to the sources.
"""

import os, sys, time, traceback

# ================= CONFIG =================

ERROR_LOG = os.path.join(os.path.dirname(os.path.abspath(__file__)), "graded_errors.log")

# Silences [INFO] lines (CLI --quiet). Warnings and errors always print.
QUIET = False

# ================= LOGGING =================

def log_err(tag: str, exc: BaseException) -> None:
    """
    Logs an error with timestamp to both file and console.

    @param tag: Identifier tag for the error source (e.g., "Parse", "Verify", "Construct")
    @param exc: The exception object to log
    @return: None
    """
    ts = time.strftime("%Y-%m-%d %H:%M:%S")
    msg = f"[{ts}] {tag}: {repr(exc)}\n{traceback.format_exc()}\n"
    try:
        with open(ERROR_LOG, "a", encoding="utf-8") as f:
            f.write(msg)
    except Exception:
        pass
    print(f"[ERR] {tag}: {exc}", file=sys.stderr)

def log_warn(msg: str) -> None:
    print(f"[WARN] {msg}", file=sys.stderr)

def log_info(msg: str) -> None:
    if not QUIET:
        print(f"[INFO] {msg}", file=sys.stderr)

def set_quiet(flag: bool) -> None:
    global QUIET
    QUIET = bool(flag)
