"""CSV formatting shared by all writers: 17-significant-digit floats,
'\n' line endings, no locale dependence."""


def fmt(x) -> str:
    if x is None:
        return ""
    return f"{float(x):.17g}"
