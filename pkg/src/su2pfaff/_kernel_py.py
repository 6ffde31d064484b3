"""Pure numpy curvature kernel (fallback when the compiled extension is absent).

Input is the metric with its first and second coordinate derivatives, batched
over points:

    g[n, i, j]          g_ij
    dg[n, i, j, c]      d_c g_ij
    ddg[n, i, j, c, d]  d_d d_c g_ij

Output is (ginv, gamma, riem) with gamma[n, r, m, v] = Gamma^r_{mv} and
riem[n, r, s, m, v] = R_{rsmv}, the all-lower Riemann tensor for
R^r_{smv} = d_m Gamma^r_{vs} - d_v Gamma^r_{ms} + Gamma^r_{ml} Gamma^l_{vs}
- Gamma^r_{vl} Gamma^l_{ms}.
"""
from __future__ import annotations

import numpy as np

from .linalg import inv


def riemann_batch(g, dg, ddg):
    g = np.ascontiguousarray(g, dtype=complex)
    dg = np.asarray(dg, dtype=complex)
    ddg = np.asarray(ddg, dtype=complex)
    ginv = inv(g)
    # first kind: G[l, m, v] = (d_m g_lv + d_v g_lm - d_l g_mv) / 2
    first = 0.5 * (np.einsum("nlvm->nlmv", dg) + dg - np.einsum("nmvl->nlmv", dg))
    gamma = np.einsum("nrl,nlmv->nrmv", ginv, first)
    dfirst = 0.5 * (np.einsum("nlvmk->nlmvk", ddg) + ddg - np.einsum("nmvlk->nlmvk", ddg))
    dginv = -np.einsum("nra,nabk,nbl->nrlk", ginv, dg, ginv)
    # dgamma[n, r, m, v, k] = d_k Gamma^r_{mv}
    dgamma = (np.einsum("nrlk,nlmv->nrmvk", dginv, first)
              + np.einsum("nrl,nlmvk->nrmvk", ginv, dfirst))
    up = (np.einsum("nrvsm->nrsmv", dgamma) - np.einsum("nrmsv->nrsmv", dgamma)
          + np.einsum("nrml,nlvs->nrsmv", gamma, gamma)
          - np.einsum("nrvl,nlms->nrsmv", gamma, gamma))
    riem = np.einsum("nra,nasmv->nrsmv", g, up)
    return ginv, gamma, riem
