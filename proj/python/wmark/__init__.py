"""Semi-blind grayscale image watermarking.

Wavelet/cosine/SVD embedding pipeline plus fidelity metrics and a
deterministic attack suite. Images are 2-D float64 numpy arrays; a
quantized image holds integers in [0, 255].
"""

from ._core import (
    WatermarkKey,
    apply_attack,
    best_candidate,
    collusion_attack,
    dct2,
    dwt2,
    embed,
    extract,
    idct2,
    idwt2,
    load_pgm,
    mse,
    nc,
    psnr,
    quadrants_to_matrix,
    quantize,
    rewatermark_attack,
    sample_host,
    sample_watermark,
    save_pgm,
    svd,
    svd_reconstruct,
    zigzag_to_quadrants,
)

__all__ = [
    "WatermarkKey",
    "apply_attack",
    "best_candidate",
    "collusion_attack",
    "dct2",
    "dwt2",
    "embed",
    "extract",
    "idct2",
    "idwt2",
    "load_pgm",
    "mse",
    "nc",
    "psnr",
    "quadrants_to_matrix",
    "quantize",
    "rewatermark_attack",
    "sample_host",
    "sample_watermark",
    "save_pgm",
    "svd",
    "svd_reconstruct",
    "zigzag_to_quadrants",
]

__version__ = "0.1.0"
