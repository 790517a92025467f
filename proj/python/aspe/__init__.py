"""Exact affine-shifted ASPE scheme and its ciphertext-only distinguisher.

Rational values are returned as ``fractions.Fraction``. Inputs accept
Fraction, int, or "p/q" strings.
"""

from ._core import (
    AspeError,
    AttackResult,
    BatchResult,
    BatchStats,
    GameConfig,
    Rng,
    SamplingDomain,
    SchemeParams,
    SecretKey,
    TrialRecord,
    decrypt,
    derive_seed,
    diff_ciphertexts,
    encrypt,
    encrypt_multi,
    encrypt_with_nonce,
    in_span,
    keygen,
    mat_invert,
    rank,
    run_attack,
    run_batch,
    run_trial,
    sample_vector,
    trial_seed,
)

__all__ = [
    "AspeError",
    "AttackResult",
    "BatchResult",
    "BatchStats",
    "GameConfig",
    "Rng",
    "SamplingDomain",
    "SchemeParams",
    "SecretKey",
    "TrialRecord",
    "decrypt",
    "derive_seed",
    "diff_ciphertexts",
    "encrypt",
    "encrypt_multi",
    "encrypt_with_nonce",
    "in_span",
    "keygen",
    "mat_invert",
    "rank",
    "run_attack",
    "run_batch",
    "run_trial",
    "sample_vector",
    "trial_seed",
]
