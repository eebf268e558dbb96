"""
Exporting 3-dimensional quotientopes
====================================

Write OFF files for the four presets on S_4 and check the face cycles.
"""

import sys
import tempfile
from pathlib import Path

from quotientopes.congruence import preset
from quotientopes.io import check_off_faces, export_off, parse_off
from quotientopes.quotientope import build_quotientope

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(tempfile.mkdtemp())
for name in ("full", "sylvester", "anti-sylvester", "cube"):
    q = build_quotientope(preset(name, 4))
    text = export_off(q)
    path = out / f"{name}.off"
    path.write_text(text)
    _, faces, _ = parse_off(text)
    print(f"{name:15} {text.splitlines()[1]:10} problems: {check_off_faces(q, faces) or 'none'} -> {path}")
