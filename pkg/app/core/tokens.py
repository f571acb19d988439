import re
from typing import List

# identifiers, numbers, then operators longest-first; whitespace is never a token
_TOKEN_RE = re.compile(
    r"[A-Za-z_][A-Za-z0-9_]*"
    r"|\d+(?:\.\d+)?(?:[eE][+-]?\d+)?[A-Za-z]*"
    r"|>>>=|<<=|>>=|\*\*=|//=|>>>"
    r"|==|!=|<=|>=|&&|\|\||\+\+|--|->|::|\+=|-=|\*=|/=|%=|&=|\|=|\^=|<<|>>|\*\*|//"
    r"|[^\sA-Za-z0-9_]"
)


def tokenize(text: str) -> List[str]:
    """Split code on identifier, number and operator boundaries."""
    return _TOKEN_RE.findall(text)
