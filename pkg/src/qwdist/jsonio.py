"""JSON output with scalar lists kept on one line."""
import json
import re

_SCALAR_LIST = re.compile(r"\[[^\[\]{}]*\]")


def dumps(obj) -> str:
    text = json.dumps(obj, indent=1)
    return _SCALAR_LIST.sub(lambda m: "[" + ", ".join(p.strip() for p in m.group(0)[1:-1].split(",")) + "]"
                            if m.group(0)[1:-1].strip() else "[]", text) + "\n"
