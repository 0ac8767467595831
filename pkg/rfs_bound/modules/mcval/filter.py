"""
Частичный фильтр Бернулли (без ложных отметок).

    прогноз:  q' = r·q + (1-r)(1-q); плотность - смесь выживших частиц
              (вес r·q) и частиц рождения из p_0 (вес (1-r)(1-q))
    пусто:    p(∅|Z) = (1-q) / ((1-q) + q(1-P_d)), веса не меняются
    отметка:  q = 1, веса ∝ ξ(z|x)
"""

import math
from typing import Optional

import numpy as np
from scipy.special import logsumexp

from rfs_bound.core.constants import BIRTH_PARTICLE_FLOOR, ESS_RESAMPLE_RATIO
from rfs_bound.core.exceptions import DegenerateWeights
from rfs_bound.modules.models import BernoulliParams, ScanModel

from .models import BernoulliPosterior


def initial_posterior(
    q_exist: float,
    mean: np.ndarray,
    cov: np.ndarray,
    n_particles: int,
    rng: np.random.Generator,
) -> BernoulliPosterior:
    """Априорная плотность: N частиц из N(mean, cov) с равными весами."""
    particles = rng.multivariate_normal(mean, cov, size=n_particles, method="cholesky")
    return BernoulliPosterior(
        q_exist=q_exist,
        particles=particles,
        weights=np.full(n_particles, 1.0 / n_particles),
        n_particles=n_particles,
    )


def predicted_existence(q_exist: float, r: float) -> float:
    return r * q_exist + (1.0 - r) * (1.0 - q_exist)


def bpf_predict(
    post: BernoulliPosterior,
    params: BernoulliParams,
    model: ScanModel,
    rng: np.random.Generator,
) -> BernoulliPosterior:
    """
    Прогноз на один скан.

    Число частиц рождения пропорционально весу рождения, но не меньше
    10% от N, если вес ненулевой.
    """
    r, q = params.r, post.q_exist
    survival_mass = r * q
    birth_mass = (1.0 - r) * (1.0 - q)
    q_pred = survival_mass + birth_mass

    survivors = model.propagate(post.particles) + model.sample_process_noise(rng, size=post.size)
    if q_pred == 0.0 or birth_mass == 0.0:
        return BernoulliPosterior(
            q_exist=min(1.0, q_pred),
            particles=survivors,
            weights=post.weights,
            n_particles=post.n_particles,
        )

    n = post.n_particles
    if survival_mass == 0.0:
        births = model.sample_birth(rng, size=n)
        return BernoulliPosterior(
            q_exist=min(1.0, q_pred),
            particles=births,
            weights=np.full(n, 1.0 / n),
            n_particles=n,
        )

    n_birth = max(math.ceil(BIRTH_PARTICLE_FLOOR * n), round(n * birth_mass / q_pred))
    births = model.sample_birth(rng, size=n_birth)
    weights = np.concatenate(
        [
            post.weights * (survival_mass / q_pred),
            np.full(n_birth, (birth_mass / q_pred) / n_birth),
        ]
    )
    return BernoulliPosterior(
        q_exist=min(1.0, q_pred),
        particles=np.concatenate([survivors, births]),
        weights=weights / np.sum(weights),
        n_particles=n,
    )


def empty_posterior_absence(q_exist: float, pd: float) -> float:
    """p(X = ∅ | пустое наблюдение) по априорной вероятности отсутствия."""
    p_absent = 1.0 - q_exist
    return p_absent / ((1.0 - pd) + pd * p_absent)


def bpf_update(
    post: BernoulliPosterior,
    z: Optional[np.ndarray],
    params: BernoulliParams,
    model: ScanModel,
) -> BernoulliPosterior:
    """
    Коррекция по наблюдению z (None - пустое множество).

    Raises:
        DegenerateWeights: все правдоподобия нулевые или отметка при
            нулевой вероятности существования
    """
    if z is None:
        return BernoulliPosterior(
            q_exist=1.0 - empty_posterior_absence(post.q_exist, params.pd),
            particles=post.particles,
            weights=post.weights,
            n_particles=post.n_particles,
        )

    if post.q_exist == 0.0:
        raise DegenerateWeights("Detection received while existence probability is zero")

    with np.errstate(divide="ignore"):
        log_w = np.log(post.weights) + model.log_likelihood(z, post.particles)
    log_w = np.where(np.isfinite(log_w), log_w, -np.inf)
    if not np.any(np.isfinite(log_w)):
        raise DegenerateWeights("All particle likelihoods underflowed")

    weights = np.exp(log_w - logsumexp(log_w))
    return BernoulliPosterior(
        q_exist=1.0,
        particles=post.particles,
        weights=weights / np.sum(weights),
        n_particles=post.n_particles,
    )


def systematic_resample(weights: np.ndarray, n: int, rng: np.random.Generator) -> np.ndarray:
    """Индексы систематического ресэмплинга (одно равномерное смещение)."""
    positions = (rng.random() + np.arange(n)) / n
    cumulative = np.cumsum(weights)
    cumulative[-1] = 1.0
    return np.searchsorted(cumulative, positions, side="right")


def _kernel_bandwidth(n: int, dim: int) -> float:
    return (4.0 / (n * (dim + 2))) ** (1.0 / (dim + 4))


def resample_if_needed(post: BernoulliPosterior, rng: np.random.Generator) -> BernoulliPosterior:
    """
    Систематический ресэмплинг до N частиц при ESS < N/2 или при числе
    частиц, отличном от N, с гауссовым размытием по взвешенной ковариации.
    """
    n = post.n_particles
    if post.size == n and post.effective_sample_size() >= ESS_RESAMPLE_RATIO * n:
        return post

    mean = post.mean()
    centred = post.particles - mean
    cov = (centred * post.weights[:, np.newaxis]).T @ centred

    indices = systematic_resample(post.weights, n, rng)
    particles = post.particles[indices]
    h = _kernel_bandwidth(n, particles.shape[1])
    particles = particles + rng.multivariate_normal(
        np.zeros(particles.shape[1]), h * h * cov, size=n, method="eigh"
    )
    return BernoulliPosterior(
        q_exist=post.q_exist,
        particles=particles,
        weights=np.full(n, 1.0 / n),
        n_particles=n,
    )


def extract_estimate(post: BernoulliPosterior, threshold: float = 0.5) -> Optional[np.ndarray]:
    """Пусто при q < threshold, иначе взвешенное среднее частиц."""
    if post.q_exist < threshold:
        return None
    return post.mean()


def set_error(
    truth: Optional[np.ndarray],
    estimate: Optional[np.ndarray],
    params: BernoulliParams,
) -> np.ndarray:
    """Ошибка между множествами мощности <= 1."""
    if truth is None and estimate is None:
        return np.zeros(params.dim)
    if truth is None:
        return params.e0_vec.copy()
    if estimate is None:
        return params.e1_vec.copy()
    return np.asarray(truth, dtype=np.float64) - np.asarray(estimate, dtype=np.float64)
