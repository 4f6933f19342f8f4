"""Pure-Python DP kernels; fallback when the compiled extension is absent.

Both backends implement byte-identical recurrences and backtraces, so the
selected backend never changes any score.
"""


def lcs_length(a, b):
    """Length of the longest common subsequence of two id sequences."""
    n, m = len(a), len(b)
    if n == 0 or m == 0:
        return 0
    prev = [0] * (m + 1)
    for i in range(1, n + 1):
        cur = [0] * (m + 1)
        ai = a[i - 1]
        for j in range(1, m + 1):
            if ai == b[j - 1]:
                cur[j] = prev[j - 1] + 1
            else:
                pj = prev[j]
                cj = cur[j - 1]
                cur[j] = pj if pj >= cj else cj
        prev = cur
    return prev[m]


def edit_counts(a, b):
    """Minimal unit-cost edit script turning ``a`` into ``b``.

    Returns (substitutions, deletions, insertions). Among minimal scripts
    the backtrace prefers substitution, then deletion, then insertion.
    """
    n, m = len(a), len(b)
    dist = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        dist[i][0] = i
    for j in range(1, m + 1):
        dist[0][j] = j
    for i in range(1, n + 1):
        ai = a[i - 1]
        row = dist[i]
        up = dist[i - 1]
        for j in range(1, m + 1):
            if ai == b[j - 1]:
                row[j] = up[j - 1]
            else:
                best = up[j - 1]
                if up[j] < best:
                    best = up[j]
                if row[j - 1] < best:
                    best = row[j - 1]
                row[j] = best + 1
    subs = dels = ins = 0
    i, j = n, m
    while i > 0 or j > 0:
        if i > 0 and j > 0:
            diag_cost = 0 if a[i - 1] == b[j - 1] else 1
            if dist[i][j] == dist[i - 1][j - 1] + diag_cost:
                subs += diag_cost
                i -= 1
                j -= 1
                continue
        if i > 0 and dist[i][j] == dist[i - 1][j] + 1:
            dels += 1
            i -= 1
            continue
        ins += 1
        j -= 1
    return subs, dels, ins
