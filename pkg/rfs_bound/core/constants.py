"""
Константы rfs-bound.
"""

# ===========================================
# Дерево последовательностей наблюдений
# ===========================================
# Жёсткий предел числа сканов (2^24 узлов)
HARD_SCAN_CAP = 24

# Максимальный порог отсечения маловероятных последовательностей
PRUNE_EPS_MAX = 1e-3

# Допуск на выход вероятности из диапазона в Γ
PROBABILITY_TOL = 1e-12

# Оценка памяти на узел: (3 скаляра + d*d) * 8 байт, с запасом на
# ping-pong буферы и временные массивы
NODE_MEMORY_OVERHEAD = 6

# ===========================================
# Линейная алгебра
# ===========================================
SYMMETRY_TOL = 1e-9
PSD_TOL = 1e-9
MAX_CONDITION = 1e12

# ===========================================
# Monte Carlo
# ===========================================
# Ресэмплинг при ESS < N * ESS_RESAMPLE_RATIO
ESS_RESAMPLE_RATIO = 0.5

# Минимальная доля частиц рождения при ненулевом весе рождения
BIRTH_PARTICLE_FLOOR = 0.1

# ===========================================
# CSV
# ===========================================
RMSE_COLUMNS = ("rmse_pos_x", "rmse_vel_x", "rmse_pos_y", "rmse_vel_y")
BASE_COLUMNS = ("scan", "pr_mass_kept") + RMSE_COLUMNS
ENUM_COLUMNS = tuple(f"enum_{name}" for name in RMSE_COLUMNS)
MC_COLUMNS = tuple(f"mc_{name}" for name in RMSE_COLUMNS) + (
    "mc_trace",
    "mc_trace_se",
    "bound_trace",
)

# Индексы компонент состояния [x, vx, y, vy]
POSITION_X, VELOCITY_X, POSITION_Y, VELOCITY_Y = 0, 1, 2, 3

# ===========================================
# Коды возврата
# ===========================================
EXIT_OK = 0
