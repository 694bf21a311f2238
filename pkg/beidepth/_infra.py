# graph6: https://users.cecs.anu.edu.au/~bdm/data/formats.txt

_GRAPH6_HEADER = b">>graph6<<"
_GRAPH6_BIAS = 63
_GRAPH6_MAX_CHAR = 126
_GRAPH6_SHORT_MAX_N = 62
_GRAPH6_BITS_PER_CHAR = 6

# one bit row per vertex
_MAX_VERTICES = 64

_EDGE_LIST_COMMENT = "#"

_REPORT_SCHEMA_VERSION = 1
_TERM_ORDER_NAMES = {"lex": "diaglex", "grevlex": "degrevlex"}
_FIELD_NAMES = ("Q", "F2")
