#!/usr/bin/env python3
"""Synthesize the bundled KRED-format snapshot fixture.

Builds a monthly macro panel in FRED-MD CSV layout (header row, "Transform:"
row, M/D/YYYY date rows) whose balanced 80x184 window carries a planted
covariance eigenstructure. Golden tests assert factor counts, variance
shares, and per-series incremental R^2 against the planted values, so the
fixture must be regenerated only together with those tests.

Outputs:
  tests/fixtures/kred_snapshot.csv   -- 88 series, 2008-06..2024-12
  tests/fixtures/kred_meta.csv       -- id,mnemonic,tcode,group,description

The script re-reads what it wrote and replays the whole pipeline in numpy
(transform -> window -> standardize -> eigen -> IC -> mR^2) to verify every
planted property before leaving the files in place.
"""

import math
import os
import sys

import numpy as np

HERE = os.path.dirname(os.path.abspath(__file__))
FIXTURE_DIR = os.path.normpath(os.path.join(HERE, "..", "tests", "fixtures"))

# ---------------------------------------------------------------------------
# Series catalogue: (id, mnemonic, tcode, group, description)

SERIES = [
    (1, "INDPRO", 1, 1, "Industrial production index: all items (2020=100; SA)"),
    (2, "IPCONGD", 1, 1, "Industrial production: consumer goods (2020=100; SA)"),
    (3, "IPDCONGD", 1, 1, "Industrial production: durable consumer goods (2020=100; SA)"),
    (4, "IPNCONGD", 1, 1, "Industrial production: nondurable consumer goods (2020=100; SA)"),
    (5, "IPBUSEQ", 1, 1, "Industrial production: machinery and equipment (2020=100; SA)"),
    (6, "IPMAT", 1, 1, "Industrial production: intermediate goods (2020=100; SA)"),
    (7, "IPMANSICS", 1, 1, "Industrial production: manufacturing (2020=100; SA)"),
    (8, "IPB51222S", 1, 1, "Industrial production: electricity; gas and steam (2020=100; SA)"),
    (9, "IPFUELS", 1, 1, "Industrial production: fuel and electricity (2020=100; SA)"),
    (10, "CUMFNS", 1, 1, "Manufacturing capacity utilization index (2020=100; SA)"),
    (11, "HWI", 5, 2, "Newly registered job openings (monthly count)"),
    (12, "HWIURATIO", 2, 2, "Job openings to job seekers ratio"),
    (13, "CLF16OV", 5, 2, "Labor force participation rate"),
    (14, "CE16OV", 5, 2, "Employed persons; total (thousands)"),
    (15, "UNRATE", 2, 2, "Unemployment rate (percent)"),
    (16, "UEMP5TO14", 5, 2, "Unemployed less than 3 months (thousands)"),
    (17, "UEMP15OV", 5, 2, "Unemployed 3 months and over (thousands)"),
    (18, "UEMP15T26", 5, 2, "Unemployed 3 to 6 months (thousands)"),
    (19, "UEMP27OV", 5, 2, "Unemployed 6 months and over (thousands)"),
    (20, "PAYEMS", 5, 2, "Employed persons; non-farm households (thousands)"),
    (21, "ICSA", 5, 2, "Unemployment benefit payments (monthly)"),
    (22, "USGOOD", 5, 2, "Employees: goods-producing industries (thousands)"),
    (23, "CES1021000001", 5, 2, "Employees: mining (thousands)"),
    (24, "USCONS", 5, 2, "Employees: construction (thousands)"),
    (25, "MANEMP", 5, 2, "Employees: manufacturing (thousands)"),
    (26, "DMANEMP", 5, 2, "Employees: durable goods manufacturing (thousands)"),
    (27, "NDMANEMP", 5, 2, "Employees: nondurable goods manufacturing (thousands)"),
    (28, "SRVPRD", 5, 2, "Employees: service-providing industries (thousands)"),
    (29, "USTPU", 5, 2, "Employees: trade; transportation and utilities (thousands)"),
    (30, "USWTRADE", 5, 2, "Employees: wholesale trade (thousands)"),
    (31, "USTRADE", 5, 2, "Employees: retail trade (thousands)"),
    (32, "USFIRE", 5, 2, "Employees: financial activities (thousands)"),
    (33, "USGOV", 5, 2, "Employees: public administration (thousands)"),
    (34, "CES0600000007", 2, 2, "Weekly hours: goods-producing industries"),
    (35, "AWOTMAN", 2, 2, "Weekly overtime hours: manufacturing"),
    (36, "AWHMAN", 2, 2, "Weekly hours: manufacturing"),
    (37, "CES0600000008", 6, 2, "Regular wages: goods-producing industries (won)"),
    (38, "CES2000000008", 6, 2, "Regular wages: construction (won)"),
    (39, "CES3000000008", 6, 2, "Regular wages: manufacturing (won)"),
    (40, "HOUST", 4, 3, "Housing starts: total (units; monthly)"),
    (41, "HOUSTNE", 4, 3, "Housing starts: Seoul (units; monthly)"),
    (42, "HOUSTMW", 4, 3, "Housing starts: Incheon/Gyeonggi (units; monthly)"),
    (43, "HOUSTS", 4, 3, "Housing starts: five major cities (units; monthly)"),
    (44, "HOUSTW", 4, 3, "Housing starts: other regions (units; monthly)"),
    (45, "PERMIT", 4, 3, "Housing permits: total (units; monthly)"),
    (46, "PERMITNE", 4, 3, "Housing permits: Seoul (units; monthly)"),
    (47, "PERMITMW", 4, 3, "Housing permits: Incheon/Gyeonggi (units; monthly)"),
    (48, "PERMITS", 4, 3, "Housing permits: five major cities (units; monthly)"),
    (49, "PERMITW", 5, 3, "Housing permits: other regions (units; monthly)"),
    (50, "RETAILx", 4, 4, "Retail and food services sales index (2020=100)"),
    (51, "ACOGNO", 2, 4, "Consumer goods imports (thousand USD)"),
    (52, "BUSINVx", 5, 4, "Manufacturing inventory turnover index (2020=100)"),
    (53, "UMCSENTx", 2, 4, "Composite consumer sentiment index"),
    (54, "M1SL", 6, 5, "M1 money stock (billion won; average)"),
    (55, "M2SL", 6, 5, "M2 money stock (billion won; average)"),
    (56, "M2REAL", 5, 5, "Real M2 money stock (deflated by CPI)"),
    (57, "BOGMBASE", 6, 5, "Monetary base (billion won; end of period)"),
    (58, "TOTRESNS", 6, 5, "Bank reserves (million won; average)"),
    (59, "DTCTHFNM", 6, 5, "Deposit bank loans and discounts (billion won)"),
    (60, "INVEST", 6, 5, "Depository corporations securities holdings (billion won)"),
    (61, "FEDFUNDS", 2, 6, "Overnight call rate (percent per annum)"),
    (62, "CP3Mx", 2, 6, "Commercial paper yield; 91-day (percent)"),
    (63, "TB3MS", 2, 6, "Monetary stabilization bond yield; 91-day (percent)"),
    (64, "TB6MS", 2, 6, "Monetary stabilization bond yield; 1-year (percent)"),
    (65, "GS1", 2, 6, "Treasury bond yield; 1-year (percent)"),
    (66, "GS5", 2, 6, "Treasury bond yield; 5-year (percent)"),
    (67, "GS10", 2, 6, "Treasury bond yield; 10-year (percent)"),
    (68, "AAA", 2, 6, "Corporate bond yield; 3-year AA- (percent)"),
    (69, "BAA", 2, 6, "Corporate bond yield; 3-year BBB- (percent)"),
    (70, "COMPAPFFx", 1, 6, "Commercial paper yield minus call rate (percent)"),
    (71, "T1YFFM", 2, 6, "Treasury 1-year yield minus call rate (percent)"),
    (72, "T5YFFM", 2, 6, "Treasury 3-year yield minus call rate (percent)"),
    (73, "T10YFFM", 2, 6, "Treasury 10-year yield minus call rate (percent)"),
    (74, "AAAFFM", 2, 6, "Corporate AA- yield minus call rate (percent)"),
    (75, "BAAFFM", 2, 6, "Corporate BBB- yield minus call rate (percent)"),
    (76, "EXSZUSx", 5, 6, "Won per US dollar exchange rate (closing)"),
    (77, "EXJPUSx", 5, 6, "Won per 100 Japanese yen exchange rate (closing)"),
    (78, "EXUSUKx", 5, 6, "Won per euro exchange rate (closing)"),
    (79, "EXCAUSx", 5, 6, "Won per Chinese yuan exchange rate (closing)"),
    (80, "OILPRICEx", 7, 7, "Crude oil price; Dubai (USD per barrel)"),
    (81, "PPICMM", 7, 7, "PPI: non-ferrous metal products (2020=100)"),
    (82, "CPIAUCSL", 7, 7, "CPI: all items (2020=100)"),
    (83, "CPIAPPSL", 7, 7, "CPI: clothing and footwear (2020=100)"),
    (84, "CPITRNSL", 7, 7, "CPI: transport (2020=100)"),
    (85, "CPIMEDSL", 7, 7, "CPI: health (2020=100)"),
    (86, "CUSR0000SAC", 7, 7, "CPI: commodities (2020=100)"),
    (87, "CUSR0000SAS", 7, 7, "CPI: services (2020=100)"),
    (88, "CPIULFSL", 7, 7, "CPI: excluding food and energy (2020=100)"),
]

DROPPED = ["HOUST", "HOUSTNE", "HOUSTMW", "HOUSTS", "HOUSTW",
           "RETAILx", "TOTRESNS", "EXCAUSx"]

# ---------------------------------------------------------------------------
# Planted factor structure on the balanced panel.
# For factor k, mr2[i] = lambda_k * U[i,k]^2, so each factor's per-series
# shares below sum to its eigenvalue. Supports are disjoint across the four
# factors, which keeps the designed eigenvectors exactly orthogonal.
# Negative share means the loading sign is flipped (squares are unchanged).

FACTOR_SHARES = {
    1: {
        "T5YFFM": 0.817, "AAA": 0.8125, "AAAFFM": 0.8115, "BAA": 0.8045,
        "BAAFFM": 0.8035, "GS5": 0.754, "GS1": 0.680, "T1YFFM": 0.675,
        "TB6MS": 0.665, "GS10": 0.645, "T10YFFM": 0.620, "FEDFUNDS": 0.600,
        "CP3Mx": 0.580, "TB3MS": 0.550, "COMPAPFFx": 0.510, "M2SL": 0.480,
        "BOGMBASE": 0.450, "DTCTHFNM": 0.420, "EXSZUSx": -0.300,
        "EXJPUSx": -0.220, "EXUSUKx": -0.200,
    },
    2: {
        "USGOOD": 0.647, "USCONS": 0.578, "PAYEMS": 0.526, "SRVPRD": 0.432,
        "USGOV": 0.365, "UNRATE": -0.362, "CLF16OV": 0.358, "CE16OV": 0.344,
        "AWHMAN": 0.311, "CPIAUCSL": 0.282, "MANEMP": 0.270, "DMANEMP": 0.265,
        "NDMANEMP": 0.260, "USTPU": 0.258, "HWI": 0.252,
        "CES1021000001": 0.248, "USWTRADE": 0.245, "USTRADE": 0.242,
        "USFIRE": 0.238, "HWIURATIO": 0.235, "UEMP5TO14": -0.230,
        "UEMP15OV": -0.228, "UEMP15T26": -0.225, "UEMP27OV": -0.222,
        "ICSA": -0.218, "CES0600000007": 0.215, "AWOTMAN": 0.212,
        "CPIULFSL": 0.240, "CUSR0000SAC": 0.235, "CUSR0000SAS": 0.230,
        "CPITRNSL": 0.208,
    },
    3: {
        "CUMFNS": 0.784, "IPMANSICS": 0.763, "INDPRO": 0.758,
        "IPCONGD": 0.515, "IPMAT": 0.469, "IPDCONGD": 0.420,
        "BUSINVx": 0.304, "IPBUSEQ": 0.284, "IPFUELS": 0.267,
        "IPNCONGD": 0.259, "IPB51222S": 0.210, "UMCSENTx": 0.170,
        "ACOGNO": 0.130,
    },
    4: {
        "PERMIT": 0.692, "PERMITMW": 0.600, "PERMITS": 0.540,
        "PERMITW": 0.510, "PERMITNE": 0.450, "CES3000000008": 0.280,
        "CES2000000008": 0.210, "CES0600000008": 0.190, "INVEST": 0.150,
        "M1SL": 0.140, "M2REAL": 0.096,
    },
}

RAW_START = (2008, 6)       # first raw month in the CSV
WINDOW_START = (2009, 9)
WINDOW_END = (2024, 12)

GAIN_45 = 0.0635            # log(m4/m5), strictly between g3 and g1
LAMBDA6 = 2.2               # head of the geometric tail


def month_index(y, m):
    return y * 12 + (m - 1)


N_PRE = month_index(*WINDOW_START) - month_index(*RAW_START)       # 15
T_WIN = month_index(*WINDOW_END) - month_index(*WINDOW_START) + 1  # 184
N_RAW = N_PRE + T_WIN                                              # 199


def month_list(start, n):
    y, m = start
    out = []
    for _ in range(n):
        out.append((y, m))
        m += 1
        if m == 13:
            y, m = y + 1, 1
    return out


def penalties(q, T):
    mn = min(q, T)
    g1 = (q + T) / (q * T) * math.log(q * T / (q + T))
    g2 = (q + T) / (q * T) * math.log(mn)
    g3 = math.log(mn) / mn
    return g1, g2, g3


def build_eigenstructure(kept):
    """Return (U, lam) for the 80x80 covariance of the balanced panel."""
    q = len(kept)
    idx = {m: i for i, m in enumerate(kept)}

    lam_head = []
    U4 = np.zeros((q, 4))
    for k in range(1, 5):
        shares = FACTOR_SHARES[k]
        lam_k = sum(abs(v) for v in shares.values())
        lam_head.append(lam_k)
        for mnem, share in shares.items():
            U4[idx[mnem], k - 1] = math.copysign(
                math.sqrt(abs(share) / lam_k), share)
    lam_head = np.array(lam_head)
    assert np.allclose(U4.T @ U4, np.eye(4), atol=1e-12)

    c4 = lam_head.sum() / q
    m4 = 1.0 - c4
    lam5 = q * m4 * (1.0 - math.exp(-GAIN_45))
    tail_sum = q - lam_head.sum() - lam5

    # geometric decay lambda_{5+j} = LAMBDA6 * rho^(j-1), j = 1..q-5
    n_tail = q - 5
    lo, hi = 0.85, 0.999
    for _ in range(200):
        rho = 0.5 * (lo + hi)
        s = LAMBDA6 * (1 - rho ** n_tail) / (1 - rho)
        if s < tail_sum:
            lo = rho
        else:
            hi = rho
    lam_geo = LAMBDA6 * rho ** np.arange(n_tail)
    lam_geo *= tail_sum / lam_geo.sum()
    lam_tail = np.concatenate([[lam5], lam_geo])
    assert lam_tail[0] > lam_tail[1] and lam_head[3] > lam_tail[0]

    lam = np.concatenate([lam_head, lam_tail])
    assert abs(lam.sum() - q) < 1e-9

    # Tail eigenvectors: orthogonal complement of U4, fixed spectrum,
    # and per-series diagonal 1 - R_i^2(4). Alternating projections between
    # the fixed-spectrum set and the fixed-diagonal set.
    rng = np.random.default_rng(573117)
    d_target = 1.0 - (U4 ** 2 * lam_head).sum(axis=1)
    assert d_target.min() > 0.05

    Qfull, _ = np.linalg.qr(np.hstack([U4, rng.standard_normal((q, q - 4))]))
    W = Qfull[:, 4:]
    lam_tail_asc = np.sort(lam_tail)

    M = W @ (W.T @ np.diag(d_target) @ W) @ W.T
    P = None
    for it in range(20000):
        B = W.T @ M @ W
        B = 0.5 * (B + B.T)
        mu, P = np.linalg.eigh(B)
        M = W @ ((P * lam_tail_asc) @ P.T) @ W.T
        M = 0.5 * (M + M.T)
        err = d_target - np.diag(M)
        if np.abs(err).max() < 1e-13:
            break
        M += np.diag(err)
    diag_err = np.abs(d_target - np.diag(M)).max()
    assert diag_err < 1e-11, f"tail diagonal not matched: {diag_err:.3e}"

    U_tail = (W @ P)[:, ::-1]          # descending eigenvalue order
    U = np.hstack([U4, U_tail])
    assert np.abs(U.T @ U - np.eye(q)).max() < 1e-10

    # sign rule: largest-magnitude entry of each column positive
    for j in range(q):
        i = int(np.argmax(np.abs(U[:, j])))
        if U[i, j] < 0:
            U[:, j] = -U[:, j]
    return U, lam


def build_time_basis(rng):
    """184x80 orthonormal columns, all orthogonal to the constant vector."""
    t = np.arange(T_WIN, dtype=float)
    covid = np.exp(-0.5 * ((t - 126) / 5.0) ** 2)       # 2020-03 is index 126
    slowdown = np.exp(-0.5 * ((t - 75) / 10.0) ** 2)    # 2015-2016
    tighten = 1.0 / (1.0 + np.exp(-(t - 152) / 6.0))    # 2022 onward

    def ar1(phi, scale):
        e = rng.standard_normal(T_WIN)
        x = np.empty(T_WIN)
        x[0] = e[0]
        for j in range(1, T_WIN):
            x[j] = phi * x[j - 1] + e[j]
        return scale * x

    shapes = np.empty((T_WIN, 4))
    shapes[:, 0] = 1.4 * tighten - 0.8 * covid + ar1(0.5, 0.45)
    shapes[:, 1] = -1.6 * covid - 0.4 * slowdown + ar1(0.5, 0.5)
    shapes[:, 2] = -2.0 * covid - 0.7 * slowdown + ar1(0.4, 0.5)
    shapes[:, 3] = 1.1 * tighten - 0.9 * covid + ar1(0.5, 0.5) - 0.006 * (t - 92)

    X = np.empty((T_WIN, 81))
    X[:, 0] = 1.0
    X[:, 1:5] = shapes
    for j in range(5, 81):
        X[:, j] = ar1(0.25, 1.0)
    Q, _ = np.linalg.qr(X)
    return Q[:, 1:]


# Raw-level synthesis parameters: mnemonic -> (mean, sd, anchors...)
# mean/sd scale the transformed series; anchors set raw levels/growth.

def series_params(mnem, tcode, group):
    if mnem == "COMPAPFFx":
        return dict(mean=0.31, sd=0.28)
    if tcode == 1 and group == 1:
        return dict(mean=100.0, sd=4.0)
    if tcode == 2:
        table = {
            "HWIURATIO": (0.0005, 0.022, 0.55),
            "UNRATE": (0.0, 0.09, 3.6),
            "CES0600000007": (-0.05, 1.1, 182.0),
            "AWOTMAN": (-0.01, 0.5, 12.4),
            "AWHMAN": (-0.05, 1.0, 186.0),
            "ACOGNO": (2000.0, 80000.0, 2400000.0),
            "UMCSENTx": (0.0, 3.5, 101.0),
        }
        if mnem in table:
            mean, sd, a = table[mnem]
            return dict(mean=mean, sd=sd, anchor=a)
        return dict(mean=-0.004, sd=0.12, anchor=5.0)   # rates and spreads
    if tcode == 4:
        logs = {"PERMIT": 10.55, "PERMITNE": 9.10, "PERMITMW": 9.33,
                "PERMITS": 8.92, "HOUST": 10.86, "HOUSTNE": 9.13,
                "HOUSTMW": 9.35, "HOUSTS": 8.96, "HOUSTW": 9.85,
                "RETAILx": 4.56}
        return dict(mean=logs.get(mnem, 9.0), sd=0.24)
    if tcode == 5:
        table = {
            "HWI": (0.002, 0.05, 185000.0),
            "ICSA": (0.003, 0.06, 320000.0),
            "PERMITW": (0.0, 0.10, 14500.0),
            "EXSZUSx": (0.0005, 0.02, 1080.0),
            "EXJPUSx": (0.0003, 0.022, 1010.0),
            "EXUSUKx": (0.0004, 0.021, 1500.0),
            "EXCAUSx": (0.0005, 0.02, 168.0),
            "M2REAL": (0.003, 0.006, 1650.0),
            "BUSINVx": (0.001, 0.012, 98.0),
            "CLF16OV": (0.0004, 0.004, 61.0),
            "UEMP5TO14": (0.0, 0.04, 520.0),
            "UEMP15OV": (0.0, 0.04, 310.0),
            "UEMP15T26": (0.0, 0.045, 200.0),
            "UEMP27OV": (0.0, 0.045, 110.0),
        }
        if mnem in table:
            mean, sd, a = table[mnem]
            return dict(mean=mean, sd=sd, anchor=a)
        return dict(mean=0.0012, sd=0.007, anchor=9500.0)  # employment counts
    if tcode == 6:
        levels = {"M1SL": 1.35e6, "M2SL": 3.2e6, "BOGMBASE": 2.6e5,
                  "TOTRESNS": 6.3e4, "DTCTHFNM": 2.1e6, "INVEST": 5.4e5,
                  "CES0600000008": 3.05e6, "CES2000000008": 3.3e6,
                  "CES3000000008": 3.15e6}
        growth = 0.0050 if group == 5 else 0.0035
        return dict(mean=0.0, sd=5e-4, anchor=levels.get(mnem, 1e6),
                    growth=growth)
    if tcode == 7:
        vol = 8e-4 if mnem == "OILPRICEx" else 5e-4
        levels = {"OILPRICEx": 95.0, "PPICMM": 88.0}
        return dict(mean=0.0, sd=vol, anchor=levels.get(mnem, 86.0),
                    growth=0.0030 if mnem == "OILPRICEx" else 0.0020)
    raise AssertionError(mnem)


def integrate(tcode, w, p):
    """Raw levels whose FRED-MD transform reproduces w (where defined)."""
    n = len(w)
    x = np.empty(n)
    if tcode == 1:
        return w.copy()
    if tcode == 2:
        x[0] = p["anchor"]
        for t in range(1, n):
            x[t] = x[t - 1] + w[t]
        return x
    if tcode == 4:
        return np.exp(w)
    if tcode == 5:
        x[0] = p["anchor"]
        for t in range(1, n):
            x[t] = x[t - 1] * math.exp(w[t])
        return x
    if tcode == 6:
        x[0] = p["anchor"]
        g = p["growth"]
        x[1] = x[0] * math.exp(g)
        for t in range(2, n):
            g += w[t]
            x[t] = x[t - 1] * math.exp(g)
        return x
    if tcode == 7:
        x[0] = p["anchor"]
        r = p["growth"]
        x[1] = x[0] * (1.0 + r)
        for t in range(2, n):
            r += w[t]
            x[t] = x[t - 1] * (1.0 + r)
        return x
    raise AssertionError(tcode)


def synth_dropped(mnem, rng):
    """Plausible raw values with in-window gaps for the excluded series."""
    months = month_list(RAW_START, N_RAW)
    vals = [None] * N_RAW

    def ar_path(n, phi=0.7):
        e = rng.standard_normal(n)
        x = np.empty(n)
        x[0] = e[0]
        for j in range(1, n):
            x[j] = phi * x[j - 1] + e[j]
        return x

    if mnem.startswith("HOUST"):
        start = months.index((2011, 1))
        base = {"HOUST": 10.86, "HOUSTNE": 9.13, "HOUSTMW": 9.35,
                "HOUSTS": 8.96, "HOUSTW": 9.85}[mnem]
        path = np.exp(base + 0.22 * ar_path(N_RAW - start))
        for j, v in enumerate(path):
            vals[start + j] = v
    elif mnem == "RETAILx":
        start = months.index((2009, 12))
        n = N_RAW - start
        path = np.exp(4.45 + 0.0022 * np.arange(n) + 0.05 * ar_path(n))
        for j, v in enumerate(path):
            vals[start + j] = v
    elif mnem == "TOTRESNS":
        stop = months.index((2023, 1))
        path = 6.3e4 * np.exp(0.004 * np.arange(stop) + 0.01 * ar_path(stop))
        for j, v in enumerate(path):
            vals[j] = v
    elif mnem == "EXCAUSx":
        start = months.index((2010, 7))
        n = N_RAW - start
        path = 168.0 * np.exp(0.02 * ar_path(n, 0.8))
        for j, v in enumerate(path):
            vals[start + j] = v
    else:
        raise AssertionError(mnem)
    return vals


def fmt(v):
    return "%.11g" % v


def write_fixtures(raw_values):
    os.makedirs(FIXTURE_DIR, exist_ok=True)
    months = month_list(RAW_START, N_RAW)
    mnems = [s[1] for s in SERIES]

    snap = os.path.join(FIXTURE_DIR, "kred_snapshot.csv")
    with open(snap, "w", newline="") as f:
        f.write("sasdate," + ",".join(mnems) + "\n")
        f.write("Transform:," + ",".join(str(s[2]) for s in SERIES) + "\n")
        for t, (y, m) in enumerate(months):
            row = ["%d/1/%d" % (m, y)]
            for mnem in mnems:
                v = raw_values[mnem][t]
                row.append("NA" if v is None else fmt(v))
            f.write(",".join(row) + "\n")

    meta = os.path.join(FIXTURE_DIR, "kred_meta.csv")
    with open(meta, "w", newline="") as f:
        f.write("id,mnemonic,tcode,group,description\n")
        for sid, mnem, tcode, group, desc in SERIES:
            f.write("%d,%s,%d,%d,%s\n" % (sid, mnem, tcode, group, desc))
    return snap, meta


# ---------------------------------------------------------------------------
# Verification: independent numpy replay of the pipeline from the CSV.

def apply_tcode_np(x, code):
    n = len(x)
    out = np.full(n, np.nan)
    if code == 1:
        return x.copy()
    if code == 2:
        out[1:] = x[1:] - x[:-1]
    elif code == 3:
        out[2:] = x[2:] - 2 * x[1:-1] + x[:-2]
    elif code == 4:
        out = np.log(x)
    elif code == 5:
        lx = np.log(x)
        out[1:] = lx[1:] - lx[:-1]
    elif code == 6:
        lx = np.log(x)
        out[2:] = lx[2:] - 2 * lx[1:-1] + lx[:-2]
    elif code == 7:
        out[2:] = x[2:] / x[1:-1] - x[1:-1] / x[:-2]
    return out


def verify(snap_path, meta_path):
    with open(snap_path) as f:
        lines = [ln.rstrip("\n") for ln in f]
    header = lines[0].split(",")
    tcodes = lines[1].split(",")[1:]
    mnems = header[1:]
    assert len(mnems) == 88
    data = []
    for ln in lines[2:]:
        cells = ln.split(",")[1:]
        data.append([math.nan if c in ("", "NA") else float(c) for c in cells])
    raw = np.array(data).T            # series x time
    tcode = {m: int(c) for m, c in zip(mnems, tcodes)}

    # transform, window, drop, balance
    kept = [m for m in mnems if m not in DROPPED]
    rows = []
    for m in kept:
        tx = apply_tcode_np(raw[mnems.index(m)], tcode[m])
        rows.append(tx[N_PRE:])
    Y = np.array(rows)
    q, T = Y.shape
    assert (q, T) == (80, 184), (q, T)
    assert np.isfinite(Y).all(), "balanced window has missing cells"

    mu = Y.mean(axis=1, keepdims=True)
    sd = np.sqrt(((Y - mu) ** 2).mean(axis=1, keepdims=True))
    Z = (Y - mu) / sd

    S = Z @ Z.T / T
    lam, U = np.linalg.eigh(S)
    lam, U = lam[::-1], U[:, ::-1]

    g1, g2, g3 = penalties(q, T)
    report = {}

    shares = lam / lam.sum()
    cum = np.cumsum(shares)
    report["c4"] = cum[3]
    assert 0.3815 <= cum[3] <= 0.3885, cum[3]

    ic = {}
    rhat = {}
    unexplained = 1.0 - cum
    for name, g in (("g1", g1), ("g2", g2), ("g3", g3)):
        curve = [math.log(unexplained[r - 1]) + r * g for r in range(1, 16)]
        ic[name] = curve
        rhat[name] = 1 + int(np.argmin(curve))
    report["rhat"] = rhat
    assert rhat == {"g1": 4, "g2": 3, "g3": 5}, rhat

    # margins at the decision boundaries
    gaps = [abs(math.log(unexplained[2] / unexplained[3]) - g)
            for g in (g1, g2)]
    gaps += [abs(math.log(unexplained[3] / unexplained[4]) - g)
             for g in (g1, g3)]
    report["ic_margins"] = min(gaps)
    assert min(gaps) > 0.0025, gaps

    mr2 = lam[None, :4] * U[:, :4] ** 2
    order = {k: sorted(range(q), key=lambda i: (-mr2[i, k], kept[i]))
             for k in range(4)}

    def names(k, n):
        return [kept[i] for i in order[k][:n]]

    report["f1_top3"] = [(kept[i], mr2[i, 0]) for i in order[0][:3]]
    assert names(0, 3) == ["T5YFFM", "AAA", "AAAFFM"]
    for nm, want in (("T5YFFM", 0.817), ("AAA", 0.8125), ("AAAFFM", 0.8115)):
        got = mr2[kept.index(nm), 0]
        assert abs(got - want) < 0.01, (nm, got)

    assert names(1, 3) == ["USGOOD", "USCONS", "PAYEMS"]
    for nm, want in (("USGOOD", 0.647), ("USCONS", 0.578), ("PAYEMS", 0.526)):
        got = mr2[kept.index(nm), 1]
        assert abs(got - want) < 0.01, (nm, got)

    assert names(3, 1) == ["PERMIT"]
    got = mr2[kept.index("PERMIT"), 3]
    assert abs(got - 0.692) < 0.01, got
    report["permit"] = got

    table1 = {
        0: ["T5YFFM", "AAA", "AAAFFM", "BAA", "BAAFFM", "GS5", "GS1",
            "T1YFFM", "TB6MS", "GS10"],
        1: ["USGOOD", "USCONS", "PAYEMS", "SRVPRD", "USGOV", "UNRATE",
            "CLF16OV", "CE16OV", "AWHMAN", "CPIAUCSL"],
        2: ["CUMFNS", "IPMANSICS", "INDPRO", "IPCONGD", "IPMAT", "IPDCONGD",
            "BUSINVx", "IPBUSEQ", "IPFUELS", "IPNCONGD"],
        3: ["PERMIT", "PERMITMW", "PERMITS", "PERMITW", "PERMITNE",
            "CES3000000008", "CES2000000008", "CES0600000008", "INVEST",
            "M1SL"],
    }
    for k in range(4):
        overlap = len(set(names(k, 10)) & set(table1[k]))
        assert overlap == 10, (k, names(k, 10))

    r2_4 = mr2.sum(axis=1)
    count = int((r2_4 > 0.5).sum())
    report["count_gt_half"] = count
    assert count == 26, count

    top_r2 = sorted(range(q), key=lambda i: (-r2_4[i], kept[i]))[:10]
    want_top = {"T5YFFM", "BAA", "BAAFFM", "AAA", "AAAFFM", "IPMANSICS",
                "INDPRO", "CUMFNS", "GS5", "PERMIT"}
    assert {kept[i] for i in top_r2} == want_top, [kept[i] for i in top_r2]

    # dropped series really are unusable over the window
    for m in DROPPED:
        tx = apply_tcode_np(raw[mnems.index(m)], tcode[m])
        assert np.isnan(tx[N_PRE:]).any(), m

    with open(meta_path) as f:
        assert len(f.readlines()) == 89
    return report


def main():
    kept = [s[1] for s in SERIES if s[1] not in DROPPED]
    U, lam = build_eigenstructure(kept)

    rng = np.random.default_rng(911003)
    V = build_time_basis(rng)
    Z = (U * np.sqrt(lam)) @ (math.sqrt(T_WIN) * V.T)
    assert np.abs(Z.mean(axis=1)).max() < 1e-10
    assert np.abs((Z ** 2).mean(axis=1) - 1).max() < 1e-9

    raw_values = {}
    by_mnem = {s[1]: s for s in SERIES}
    for i, mnem in enumerate(kept):
        _, _, tcode, group, _ = by_mnem[mnem]
        p = series_params(mnem, tcode, group)
        w = np.empty(N_RAW)
        w[:N_PRE] = p["mean"] + p["sd"] * rng.standard_normal(N_PRE)
        w[N_PRE:] = p["mean"] + p["sd"] * Z[i]
        x = integrate(tcode, w, p)
        if tcode >= 4:
            assert x.min() > 0, (mnem, x.min())
        raw_values[mnem] = list(x)
    for mnem in DROPPED:
        raw_values[mnem] = synth_dropped(mnem, rng)

    snap, meta = write_fixtures(raw_values)
    report = verify(snap, meta)

    print("snapshot:", snap)
    print("meta:    ", meta)
    for k, v in report.items():
        print(f"  {k}: {v}")
    print("all planted properties verified")


if __name__ == "__main__":
    main()
