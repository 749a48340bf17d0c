from hypothesis import strategies as st


def perms(min_len=1, max_len=7):
    """Permutations as tuples, length drawn uniformly from the range."""
    return st.integers(min_len, max_len).flatmap(
        lambda n: st.permutations(range(1, n + 1)).map(tuple))
