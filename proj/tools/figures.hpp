#pragma once

// Shipped sweep presets for the `reproduce` subcommand. Each entry is a
// complete config in the same format `sweep --config` accepts; the id keyed
// here is the CLI's <figure-id> argument. Presets that share one data set
// (different panels of the same sweep) point at the same config text.

#include <string>
#include <vector>

namespace kerrsync {

struct FigurePreset {
    const char* id;
    const char* summary;
    const char* config;
};

// Classical Langevin baseline, S(delta) for four couplings. The peak sits
// at zero detuning; the Kerr scale 2K = 4 shows no special feature.
inline constexpr const char* fig2a_config = R"cfg(
mode = classical-detuning
seed = 2001
out = fig2a.csv

[oscillator 1]
kerr = 2
gamma = 1
n_plus = 2
n_minus = 3
sigma = 0.2

[oscillator 2]
kerr = 2
gamma = 1
n_plus = 2
n_minus = 3
sigma = 0.2

[coupling]
row = 0 0
row = 0 0

[sweep]
axis = delta
start = -6
stop = 6
points = 61

[sweep2]
axis = v
values = 0.016666666666666666 0.025 0.0375 0.05

[classical]
gamma_t = 1
n_t = 0.1
dt = 0.002
t_burn = 20
t_sample = 150
dt_sample = 0.5
n_traj = 256
n_bins = 16
)cfg";

// Quantum steady state, S(delta) for four couplings. Zero detuning is
// blockaded; the peaks sit at delta = +-2K = +-20.
inline constexpr const char* fig2b_config = R"cfg(
mode = quantum-detuning
seed = 2002
out = fig2b.csv

[oscillator 1]
kerr = 10
gamma = 1
n_plus = 2
n_minus = 3
sigma = 0.2

[oscillator 2]
kerr = 10
gamma = 1
n_plus = 2
n_minus = 3
sigma = 0.2

[coupling]
row = 0 0
row = 0 0

[sweep]
axis = delta
start = -30
stop = 30
points = 61

[sweep2]
axis = v
values = 0.05 0.2 0.35 0.5
)cfg";

// Blockade versus stabilization width: sigma cuts with K tied to sigma
// through K = gamma / sigma, so 2K moves from 10 down to 2.5.
inline constexpr const char* fig3a_config = R"cfg(
mode = quantum-sigma
seed = 2003
out = fig3a.csv
kerr_tracks_sigma = true

[oscillator 1]
kerr = 5
gamma = 1
n_plus = 4
sigma = 0.2
dim = 14

[oscillator 2]
kerr = 5
gamma = 1
n_plus = 4
sigma = 0.2
dim = 14

[coupling]
row = 0 0.1
row = 0.1 0

[sweep]
axis = delta
start = -15
stop = 15
points = 61

[sweep2]
axis = sigma
values = 0.2 0.4 0.6 0.8

[solver]
tail_max = 0.03
)cfg";

// Amplitude blockade at matched frequencies: S versus the second
// oscillator's stabilized level, with a dip where both levels coincide.
inline constexpr const char* fig3b_config = R"cfg(
mode = quantum-amplitude
seed = 2004
out = fig3b.csv

[oscillator 1]
kerr = 5
gamma = 1
n_plus = 4
sigma = 0.2

[oscillator 2]
kerr = 5
gamma = 1
n_plus = 4
sigma = 0.2

[coupling]
row = 0 0.1
row = 0.1 0

[sweep]
axis = n2_plus
start = 2.5
stop = 5.5
points = 31
)cfg";

// Resonance ridges versus detuning for stabilized-level differences
// n2 - n1 of -2..2: maxima at delta = -2K(n2-n1) -+ 2K.
inline constexpr const char* fig3c_config = R"cfg(
mode = quantum-amplitude
seed = 2005
out = fig3c.csv

[oscillator 1]
kerr = 5
gamma = 1
n_plus = 4
sigma = 0.2

[oscillator 2]
kerr = 5
gamma = 1
n_plus = 4
sigma = 0.2

[coupling]
row = 0 0.1
row = 0.1 0

[sweep]
axis = delta
start = -35
stop = 35
points = 71

[sweep2]
axis = n2_plus
values = 2 3 4 5 6
)cfg";

// Peak splitting versus Kerr strength: one maximum at zero for K = 0,
// moving out to +-2K as the anharmonicity grows.
inline constexpr const char* fig3d_config = R"cfg(
mode = quantum-kerr
seed = 2006
out = fig3d.csv

[oscillator 1]
kerr = 0
gamma = 1
n_plus = 4
sigma = 0.2

[oscillator 2]
kerr = 0
gamma = 1
n_plus = 4
sigma = 0.2

[coupling]
row = 0 0.1
row = 0.1 0

# The harmonic limit hybridizes the resonant pair and populations decay
# only algebraically, so tails near K = 0, delta = 0 stay at the percent
# level for any workable dimension. Peak positions are insensitive to it.
[solver]
tail_max = 0.04

[sweep]
axis = delta
start = -25
stop = 25
points = 51

[sweep2]
axis = kerr
values = 0 2 4 6 8 10
)cfg";

// Three oscillators, A and B identical and uncoupled (v2 = 0), C detuned
// and driving both through v1: indirect A-B synchronization versus the
// detuning of C. One table carries S_AB, S_AC and S_BC.
inline constexpr const char* fig4ab_config = R"cfg(
mode = network3
seed = 2007
out = fig4ab.csv

[oscillator 1]
kerr = 10
gamma = 1
n_plus = 1
sigma = 0.2
dim = 6

[oscillator 2]
kerr = 10
gamma = 1
n_plus = 1
sigma = 0.2
dim = 6

[oscillator 3]
kerr = 10
gamma = 1
n_plus = 1
sigma = 0.2
dim = 6

[coupling]
row = 0 0 0
row = 0 0 0
row = 0 0 0

# At the strongest mediation the sweep edge just grazes the default tail
# gate; the resonance peaks sit well inside with converged tails.
[solver]
tail_max = 0.02

[sweep]
axis = delta
start = -30
stop = 30
points = 31

[sweep2]
axis = v1
values = 0.1 0.2 0.4
)cfg";

// Same network held at the delta = 2K resonance: maps indirect A-B
// synchronization against the direct coupling v2 for several v1, showing
// the direct link suppressing the mediated one.
inline constexpr const char* fig4cd_config = R"cfg(
mode = network3
seed = 2008
out = fig4cd.csv

[oscillator 1]
kerr = 10
gamma = 1
n_plus = 1
sigma = 0.2
dim = 6

[oscillator 2]
kerr = 10
gamma = 1
n_plus = 1
sigma = 0.2
dim = 6

[oscillator 3]
omega = -20
kerr = 10
gamma = 1
n_plus = 1
sigma = 0.2
dim = 6

[coupling]
row = 0 0 0
row = 0 0 0
row = 0 0 0

[sweep]
axis = v2
start = 0
stop = 0.4
points = 9

[sweep2]
axis = v1
values = 0.05 0.1 0.15 0.2 0.3 0.4 0.5 0.6
)cfg";

// Ring of four: sites 1 and 3 at zero detuning, 2 and 4 at -delta, nearest
// neighbours coupled. S_AB is a detuned neighbour pair, S_AC the identical
// diagonal pair, S_BC the other neighbour pair.
inline constexpr const char* figS1_config = R"cfg(
mode = network4
seed = 2009
out = figS1.csv

[oscillator 1]
kerr = 10
gamma = 1
n_plus = 1
sigma = 0.2
dim = 4

[oscillator 2]
kerr = 10
gamma = 1
n_plus = 1
sigma = 0.2
dim = 4

[oscillator 3]
kerr = 10
gamma = 1
n_plus = 1
sigma = 0.2
dim = 4

[oscillator 4]
kerr = 10
gamma = 1
n_plus = 1
sigma = 0.2
dim = 4

[coupling]
row = 0 0.1 0 0.1
row = 0.1 0 0.1 0
row = 0 0.1 0 0.1
row = 0.1 0 0.1 0

[sweep]
axis = delta
start = -40
stop = 40
points = 17

[solver]
tail_max = 0.1
)cfg";

// Hard-truncated three-level pair at strong coupling: without Kerr the
// peak sits at zero detuning, with K = 15 it splits to +-2K.
inline constexpr const char* figS2b_config = R"cfg(
mode = minimal-3level
seed = 2010
out = figS2b.csv

[oscillator 1]
kerr = 0
gamma = 1
n_plus = 1
sigma = 0.2

[oscillator 2]
kerr = 0
gamma = 1
n_plus = 1
sigma = 0.2

[coupling]
row = 0 0.8
row = 0.8 0

[sweep]
axis = delta
start = -60
stop = 60
points = 61

[sweep2]
axis = kerr
values = 0 15
)cfg";

inline const std::vector<FigurePreset>& figure_presets() {
    static const std::vector<FigurePreset> presets = {
        {"fig2a", "classical baseline, S(delta) for four couplings", fig2a_config},
        {"fig2b", "quantum blockade, S(delta) for four couplings", fig2b_config},
        {"fig3a", "sigma cuts with K = gamma/sigma", fig3a_config},
        {"fig3b", "amplitude blockade at matched frequencies", fig3b_config},
        {"fig3c", "resonance ridges for level differences -2..2", fig3c_config},
        {"fig3d", "peak splitting versus Kerr strength", fig3d_config},
        {"fig4a", "three-oscillator chain, mediated sync versus detuning", fig4ab_config},
        {"fig4b", "same sweep as fig4a (companion panel)", fig4ab_config},
        {"fig4c", "three-oscillator chain at resonance, direct versus mediated", fig4cd_config},
        {"fig4d", "same sweep as fig4c (companion panel)", fig4cd_config},
        {"figS1", "ring of four oscillators versus detuning", figS1_config},
        {"figS2b", "three-level pair, K = 0 against K = 15", figS2b_config},
    };
    return presets;
}

inline const FigurePreset* find_figure(const std::string& id) {
    for (const auto& preset : figure_presets())
        if (id == preset.id) return &preset;
    return nullptr;
}

}  // namespace kerrsync
