# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: percent
#   kernelspec:
#     display_name: Python 3
#     language: python
#     name: python3
# ---

# %% [markdown]
# # Lambda over F_3 as a picture
#
# With q = 3 there are two multiplicities (of 1 and of 2), so Lambda(k, a, b)
# fills a D x D grid.  Colours: 0 blue, 1 red, 2 green.

# %%
import tempfile
from pathlib import Path

import numpy as np

from symsum.cli import grid_image, grid_render

img = grid_image(3, 3)
np.array(img.pixels)

# %%
out = Path(tempfile.mkdtemp()) / "lambda_k27.ppm"
grid_render(3, 27, out)["counts"]

# %%
img27 = np.array(grid_image(3, 27).pixels)
img27.shape, np.bincount(img27.ravel())
