# %% [markdown]
# # Building blocks
#
# The per-block machinery on its own: singular-value trace, logistic-map
# bit positions and the Arnold map used to scatter group members.

# %%
import numpy as np

from fragmark import arnold_period, logistic_sequence, rank_permutation, scramble_grid, sv_trace
from fragmark.blockauth import AuthBits, block_ban, chaotic_params, pack_auth_bits, unpack_auth_bits

block = np.array([[52, 54, 60, 62], [50, 58, 66, 70], [48, 56, 72, 80], [46, 60, 78, 90]])
print("trace of S:", sv_trace(block), " BAN:", block_ban(block))

params = chaotic_params(block)
seq = logistic_sequence(params, 16)
perm = rank_permutation(seq)
print(f"x0 = {params.x0:.5f}, mu = {params.mu:.5f}")
print("insertion order (largest sequence value first):", perm.tolist())

tile = pack_auth_bits(AuthBits(ban=block_ban(block), gan=37), perm)
print(tile)
print("unpacked:", unpack_auth_bits(tile, perm))

# %% [markdown]
# The Arnold map on a 128x128 block grid has period 96, so scrambling 30
# times and then 66 more times restores the grid.

# %%
t = arnold_period(1, 1, 128)
grid = np.arange(128 * 128).reshape(128, 128)
restored = scramble_grid(scramble_grid(grid, 1, 1, 30), 1, 1, t - 30)
print("period:", t, " restored:", np.array_equal(restored, grid))
