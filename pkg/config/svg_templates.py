# SVG document templates
# Every placeholder receives text that is already formatted; no float
# formatting happens inside the templates.

SVG_HEADER = """<?xml version="1.0" encoding="UTF-8" standalone="no"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">
<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>
"""

SVG_FOOTER = "</svg>\n"

# Tree scenes keep math coordinates (y up); the flip lives in the group transform
TREE_GROUP = '<g transform="translate({tx} {ty}) scale({scale} {neg_scale})" fill="none" stroke-linecap="round">\n'

LEVEL_GROUP = '<g stroke="{color}" stroke-width="{width}">\n'

GROUP_END = "</g>\n"

LINE = '<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>\n'

POLYLINE = '<polyline points="{points}" stroke="{color}" stroke-width="{width}" fill="none"/>\n'

# Function plots are laid out in pixel coordinates
PLOT_LINE = '<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{color}" stroke-width="{width}"{dash}/>\n'

PLOT_DOT = '<circle cx="{x}" cy="{y}" r="1.5" fill="{color}"/>\n'

TEXT = '<text x="{x}" y="{y}" font-family="sans-serif" font-size="{size}" text-anchor="{anchor}"{extra}>{text}</text>\n'

TREE_COLOR = "#7a7a7a"
CURVE_COLOR = "#1f4e9c"
AXIS_COLOR = "black"
GRID_COLOR = "#d0d0d0"

PLOT_MARGINS = {
    "left": 70,
    "right": 20,
    "top": 30,
    "bottom": 50,
}
