# %% [markdown]
# # Collage (vector quantization) attack
#
# Two different hosts are watermarked with the same key. A region of the
# second is pasted into the first at the same position. Each pasted block
# still carries a BAN that matches its own content, so a purely block-wise
# scheme would accept the forgery. The group numbers give it away: each
# pasted block shares a group with blocks from the first image, and its
# group number disagrees with theirs.

# %%
from fragmark import AuthKey, Rect, embed, render_tamper_map, save_gray, splice, verify
from _common import OUT, gray, horse_watermark

key = AuthKey(1, 1, 30, horse_watermark())
first = embed(gray("camera"), key)
second = embed(gray("astronaut"), key)

forged = splice(first, second, Rect(192, 128, 96, 96))
report = verify(forged, key)

changed = (forged != first).reshape(128, 4, 128, 4).any(axis=(1, 3))
print("spliced blocks:", int(changed.sum()))
print("blocks passing their own BAN check:", int((~report.ban_mismatch[changed]).sum()))
print("spliced blocks flagged:", int(report.tamper_map[changed].sum()))

save_gray(forged, OUT / "vq_forgery.pgm")
save_gray(render_tamper_map(report.tamper_map), OUT / "vq_map.pgm")
