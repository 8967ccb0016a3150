"""Pure-Python enforce kernel; same contract as the compiled ``_enforce``.

Profiles arrive flattened: row ``i`` of ``coal`` is the coalition profile
``F`` laid out role after role, row ``j`` of ``comp`` an opponent profile
``G``.  ``F + G`` is a complete profile, located in the per-state delta
table by its lexicographic rank:

* within a role, a vote ``v`` of ``pop`` agents over ``a`` actions ranks
  ``sum_i mc[rem_i][p_i + 1] - mc[rem_i - v_i][p_i + 1]`` with
  ``p_i = a - i - 1`` parts left and ``rem_i`` votes left;
* roles combine in mixed radix, last role fastest.
"""


def enforce_scan(coal, n_coal, comp, n_comp, role_start, role_pop, role_radix,
                 mc, mc_stride, targets, allowed, short_circuit):
    """Return ``(found, pairs_inspected)`` for the enforce double loop."""
    n_roles = len(role_pop)
    width = role_start[n_roles]
    inspected = 0
    found = False
    for i in range(n_coal):
        base_f = i * width
        ok = True
        for j in range(n_comp):
            base_g = j * width
            rank = 0
            for r in range(n_roles):
                lo = role_start[r]
                a = role_start[r + 1] - lo
                rem = role_pop[r]
                sub = 0
                for k in range(a - 1):
                    v = coal[base_f + lo + k] + comp[base_g + lo + k]
                    col = a - k
                    sub += mc[rem * mc_stride + col] - mc[(rem - v) * mc_stride + col]
                    rem -= v
                rank = rank * role_radix[r] + sub
            inspected += 1
            if not allowed[targets[rank]]:
                ok = False
                if short_circuit:
                    break
        if ok:
            found = True
            if short_circuit:
                break
    return found, inspected
