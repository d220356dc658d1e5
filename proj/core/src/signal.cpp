#include "sense/signal.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "sense/fft.hpp"
#include "sense/rng.hpp"

namespace sense {

namespace {

constexpr double kRrcRollOff = 0.25;
constexpr int kRrcSpanSymbols = 12;

double rrc_pulse(double t_over_T, double beta) {
  const double t = t_over_T;
  if (std::abs(t) < 1e-12) return 1.0 - beta + 4.0 * beta / kPi;
  const double sing = 1.0 / (4.0 * beta);
  if (std::abs(std::abs(t) - sing) < 1e-9) {
    return beta / std::sqrt(2.0) *
           ((1.0 + 2.0 / kPi) * std::sin(kPi / (4.0 * beta)) +
            (1.0 - 2.0 / kPi) * std::cos(kPi / (4.0 * beta)));
  }
  const double num = std::sin(kPi * t * (1.0 - beta)) + 4.0 * beta * t * std::cos(kPi * t * (1.0 + beta));
  const double den = kPi * t * (1.0 - (4.0 * beta * t) * (4.0 * beta * t));
  return num / den;
}

/// Linear modulation baseband: sum_k a_k * g((t - k*T_sym)/T_sym), evaluated
/// at arbitrary (fractional) symbol timing on the Nyquist grid.
VecC shaped_symbol_stream(const std::vector<cd>& symbols, double symbol_rate_hz, double f_nyq_hz,
                          Eigen::Index length) {
  VecC out = VecC::Zero(length);
  const double T_sym = f_nyq_hz / symbol_rate_hz;  // symbol period in grid samples
  for (Eigen::Index t = 0; t < length; ++t) {
    const double u = double(t) / T_sym;
    const int k_lo = int(std::ceil(u - kRrcSpanSymbols / 2.0));
    const int k_hi = int(std::floor(u + kRrcSpanSymbols / 2.0));
    cd acc{0.0, 0.0};
    for (int k = k_lo; k <= k_hi; ++k) {
      if (k < 0 || k >= int(symbols.size())) continue;
      acc += symbols[size_t(k)] * rrc_pulse(u - double(k), kRrcRollOff);
    }
    out[t] = acc;
  }
  return out;
}

std::vector<cd> draw_symbols(Modulation m, size_t count, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> bit(0, 1);
  std::uniform_int_distribution<int> lvl(0, 3);
  std::vector<cd> syms(count);
  switch (m) {
    case Modulation::kBpsk:
      for (auto& s : syms) s = cd(bit(rng) ? 1.0 : -1.0, 0.0);
      break;
    case Modulation::kQpsk:
      for (auto& s : syms)
        s = cd(bit(rng) ? M_SQRT1_2 : -M_SQRT1_2, bit(rng) ? M_SQRT1_2 : -M_SQRT1_2);
      break;
    case Modulation::kQam16: {
      const double a[4] = {-3.0, -1.0, 1.0, 3.0};
      for (auto& s : syms) s = cd(a[lvl(rng)], a[lvl(rng)]) / std::sqrt(10.0);
      break;
    }
    default:
      require(false, "bad-modulation", "not a symbol modulation");
  }
  return syms;
}

/// Complex baseband for one transmission, band limited to ~[-B/2, B/2].
VecC baseband(const TransmissionSpec& spec, double f_nyq_hz, Eigen::Index length,
              std::mt19937_64& rng) {
  switch (spec.modulation) {
    case Modulation::kAm: {
      // Tone-modulated carrier; bandwidth 0 degenerates to a bare carrier.
      std::uniform_real_distribution<double> ph(0.0, 2.0 * kPi);
      const double phase = ph(rng);
      VecC bb(length);
      if (spec.bandwidth_hz <= 0.0) {
        bb.setOnes();
        return bb;
      }
      const double fm = spec.bandwidth_hz / 2.0;
      const double depth = 0.8;
      for (Eigen::Index t = 0; t < length; ++t)
        bb[t] = 1.0 + depth * std::cos(2.0 * kPi * fm * double(t) / f_nyq_hz + phase);
      return bb;
    }
    case Modulation::kBpsk:
    case Modulation::kQpsk:
    case Modulation::kQam16: {
      require(spec.symbol_rate_hz > 0.0, "bad-symbol-rate", "symbol_rate_hz must be positive");
      const size_t n_sym = size_t(std::ceil(double(length) * spec.symbol_rate_hz / f_nyq_hz)) +
                           kRrcSpanSymbols;
      auto syms = draw_symbols(spec.modulation, n_sym, rng);
      return shaped_symbol_stream(syms, spec.symbol_rate_hz, f_nyq_hz, length);
    }
    case Modulation::kOfdm: {
      // Parallel RRC-shaped QPSK streams, one per subcarrier, spaced by the
      // declared symbol rate and kept strictly inside the declared band.
      require(spec.symbol_rate_hz > 0.0, "bad-symbol-rate", "symbol_rate_hz must be positive");
      const double spacing = spec.symbol_rate_hz;
      const double occupied_per_sc = spacing * (1.0 + kRrcRollOff);
      const int n_sc = std::max(1, int(std::floor((spec.bandwidth_hz - occupied_per_sc) / spacing)) + 1);
      VecC bb = VecC::Zero(length);
      for (int sc = 0; sc < n_sc; ++sc) {
        const double offset = (double(sc) - double(n_sc - 1) / 2.0) * spacing;
        const size_t n_sym = size_t(std::ceil(double(length) * spacing / f_nyq_hz)) + kRrcSpanSymbols;
        auto syms = draw_symbols(Modulation::kQpsk, n_sym, rng);
        VecC stream = shaped_symbol_stream(syms, spacing, f_nyq_hz, length);
        for (Eigen::Index t = 0; t < length; ++t)
          bb[t] += stream[t] * std::exp(kJ * (2.0 * kPi * offset * double(t) / f_nyq_hz));
      }
      return bb;
    }
    case Modulation::kFilteredNoise: {
      std::normal_distribution<double> gauss(0.0, 1.0);
      VecC white(length);
      for (Eigen::Index t = 0; t < length; ++t) white[t] = cd(gauss(rng), gauss(rng));
      VecC spec_bins = fft(white);
      const double df = f_nyq_hz / double(length);
      for (Eigen::Index j = 0; j < length; ++j) {
        const double f = bin_frequency(j, length, f_nyq_hz);
        if (std::abs(f) > spec.bandwidth_hz / 2.0 - df / 2.0) spec_bins[j] = 0.0;
      }
      return ifft(spec_bins);
    }
  }
  require(false, "bad-modulation", "unknown modulation");
  return {};
}

}  // namespace

Modulation modulation_from_string(const std::string& s) {
  if (s == "AM") return Modulation::kAm;
  if (s == "BPSK") return Modulation::kBpsk;
  if (s == "QPSK") return Modulation::kQpsk;
  if (s == "QAM16") return Modulation::kQam16;
  if (s == "OFDM") return Modulation::kOfdm;
  if (s == "filtered-noise") return Modulation::kFilteredNoise;
  throw SenseError("bad-modulation", "unknown modulation: " + s);
}

std::string to_string(Modulation m) {
  switch (m) {
    case Modulation::kAm: return "AM";
    case Modulation::kBpsk: return "BPSK";
    case Modulation::kQpsk: return "QPSK";
    case Modulation::kQam16: return "QAM16";
    case Modulation::kOfdm: return "OFDM";
    case Modulation::kFilteredNoise: return "filtered-noise";
  }
  return "?";
}

ChannelModel::Kind channel_kind_from_string(const std::string& s) {
  if (s == "ideal") return ChannelModel::Kind::kIdeal;
  if (s == "rayleigh") return ChannelModel::Kind::kRayleigh;
  if (s == "shadowing") return ChannelModel::Kind::kShadowing;
  if (s == "both") return ChannelModel::Kind::kBoth;
  throw SenseError("bad-channel", "unknown channel kind: " + s);
}

std::string to_string(ChannelModel::Kind k) {
  switch (k) {
    case ChannelModel::Kind::kIdeal: return "ideal";
    case ChannelModel::Kind::kRayleigh: return "rayleigh";
    case ChannelModel::Kind::kShadowing: return "shadowing";
    case ChannelModel::Kind::kBoth: return "both";
  }
  return "?";
}

MultibandSignal synthesize(const std::vector<TransmissionSpec>& specs, double f_nyq_hz,
                           double duration_s, std::uint64_t seed, bool complex_mode) {
  require(f_nyq_hz > 0.0, "bad-rate", "f_nyq_hz must be positive");
  const double n_real = duration_s * f_nyq_hz;
  const auto length = Eigen::Index(std::llround(n_real));
  require(std::abs(n_real - double(length)) < 1e-6 && length >= 64, "bad-duration",
          "duration_s * f_nyq_hz must be an integer >= 64");

  MultibandSignal out;
  out.f_nyq_hz = f_nyq_hz;
  out.complex_mode = complex_mode;
  out.truth = specs;
  out.samples = VecC::Zero(length);

  for (size_t i = 0; i < specs.size(); ++i) {
    const auto& spec = specs[i];
    require(std::abs(spec.carrier_hz) + spec.bandwidth_hz / 2.0 <= f_nyq_hz / 2.0 + 1e-9,
            "band-overflow", "carrier + bandwidth/2 exceeds the Nyquist range");
    require(spec.power >= 0.0, "bad-power", "power must be nonnegative");
    for (size_t j = 0; j < i; ++j) {
      const auto& other = specs[j];
      if (std::abs(spec.carrier_hz - other.carrier_hz) <
          (spec.bandwidth_hz + other.bandwidth_hz) / 2.0)
        out.overlapping_bands = true;
    }

    auto rng = make_rng(derive_seed(seed, spec.seed + 0x100 * i));
    VecC bb = baseband(spec, f_nyq_hz, length, rng);

    std::uniform_real_distribution<double> ph(0.0, 2.0 * kPi);
    const cd carrier_phase = std::exp(kJ * ph(rng));
    VecC comp(length);
    for (Eigen::Index t = 0; t < length; ++t) {
      const cd up = bb[t] * carrier_phase *
                    std::exp(kJ * (2.0 * kPi * spec.carrier_hz * double(t) / f_nyq_hz));
      comp[t] = complex_mode ? up : cd(up.real(), 0.0);
    }
    const double p = comp.squaredNorm() / double(length);
    if (p > 0.0 && spec.power > 0.0)
      comp *= std::sqrt(spec.power / p);
    else
      comp.setZero();

    out.components.push_back(comp);
    out.samples += comp;
  }
  return out;
}

cd channel_gain(const ChannelModel& ch, int transmission_index, int receiver_index) {
  if (ch.kind == ChannelModel::Kind::kIdeal) return cd(1.0, 0.0);
  auto rng = make_rng(derive_seed(ch.seed, std::uint64_t(transmission_index) * 0x10001ULL +
                                               std::uint64_t(receiver_index)));
  cd gain(1.0, 0.0);
  if (ch.kind == ChannelModel::Kind::kRayleigh || ch.kind == ChannelModel::Kind::kBoth) {
    require(ch.sigma > 0.0, "bad-channel", "rayleigh sigma must be positive");
    // Rayleigh amplitude via inverse CDF, uniform phase.
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double u = std::max(uni(rng), 1e-300);
    const double r = ch.sigma * std::sqrt(-2.0 * std::log(u));
    std::uniform_real_distribution<double> ph(0.0, 2.0 * kPi);
    gain *= r * std::exp(kJ * ph(rng));
  }
  if (ch.kind == ChannelModel::Kind::kShadowing || ch.kind == ChannelModel::Kind::kBoth) {
    require(ch.gamma >= 0.0, "bad-channel", "gamma must be nonnegative");
    require(transmission_index < ch.distances.rows() && receiver_index < ch.distances.cols(),
            "missing-distance", "no distance entry for this (transmission, receiver) pair");
    const double d = ch.distances(transmission_index, receiver_index);
    require(d > 0.0, "missing-distance", "distances must be positive");
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double x_sigma = ch.sigma_sh_db * gauss(rng);
    const double pl_db = ch.pl0_db + 10.0 * ch.gamma * std::log10(d / ch.d0) + x_sigma;
    gain *= std::pow(10.0, -pl_db / 20.0);
  }
  return gain;
}

MultibandSignal apply_channel(const MultibandSignal& x, const ChannelModel& ch,
                              int receiver_index) {
  require(!x.components.empty() || x.truth.empty(), "bad-signal",
          "apply_channel needs per-transmission components");
  MultibandSignal out = x;
  out.samples = VecC::Zero(x.length());
  for (size_t i = 0; i < x.components.size(); ++i) {
    const cd g = channel_gain(ch, int(i), receiver_index);
    VecC comp;
    if (x.complex_mode || g.imag() == 0.0) {
      comp = x.components[i] * g;
    } else {
      // Real signals: rotate the analytic signal so both conjugate bands get
      // conjugate gains and the output stays real.
      VecC spec_bins = fft(x.components[i]);
      const Eigen::Index L = spec_bins.size();
      for (Eigen::Index j = 0; j < L; ++j) {
        const double f = bin_frequency(j, L, 1.0);
        if (f > 0.0)
          spec_bins[j] *= g;
        else if (f < 0.0)
          spec_bins[j] *= std::conj(g);
        else
          spec_bins[j] *= g.real();
      }
      comp = ifft(spec_bins);
      for (Eigen::Index t = 0; t < comp.size(); ++t) comp[t] = cd(comp[t].real(), 0.0);
    }
    out.components[i] = comp;
    out.samples += comp;
  }
  return out;
}

MultibandSignal add_noise(const MultibandSignal& x, double snr_db, std::uint64_t seed) {
  if (std::isinf(snr_db) && snr_db > 0.0) return x;
  const auto mask = occupied_bin_mask(x.truth, x.length(), x.f_nyq_hz, x.complex_mode);
  VecC sig_bins = fft(x.samples);
  double p_sig = 0.0;
  for (Eigen::Index j = 0; j < x.length(); ++j)
    if (mask[size_t(j)]) p_sig += std::norm(sig_bins[j]);
  require(p_sig > 0.0, "zero-signal", "finite SNR requested on a zero signal");

  auto rng = make_rng(derive_seed(seed, 0xAD0153ULL));
  std::normal_distribution<double> gauss(0.0, 1.0);
  VecC noise(x.length());
  for (Eigen::Index t = 0; t < x.length(); ++t)
    noise[t] = x.complex_mode ? cd(gauss(rng), gauss(rng)) : cd(gauss(rng), 0.0);

  VecC noise_bins = fft(noise);
  double p_noise = 0.0;
  for (Eigen::Index j = 0; j < x.length(); ++j)
    if (mask[size_t(j)]) p_noise += std::norm(noise_bins[j]);
  require(p_noise > 0.0, "zero-signal", "degenerate noise draw");

  const double target = p_sig / std::pow(10.0, snr_db / 10.0);
  noise *= std::sqrt(target / p_noise);

  MultibandSignal out = x;
  out.samples += noise;
  return out;
}

std::vector<bool> occupied_bin_mask(const std::vector<TransmissionSpec>& truth,
                                    Eigen::Index length, double f_nyq_hz, bool complex_mode) {
  std::vector<bool> mask(size_t(length), false);
  const double df = f_nyq_hz / double(length);
  for (const auto& spec : truth) {
    for (Eigen::Index j = 0; j < length; ++j) {
      const double f = bin_frequency(j, length, f_nyq_hz);
      const bool in_pos = std::abs(f - spec.carrier_hz) <= spec.bandwidth_hz / 2.0 + df;
      const bool in_neg = std::abs(f + spec.carrier_hz) <= spec.bandwidth_hz / 2.0 + df;
      if (in_pos || (!complex_mode && in_neg)) mask[size_t(j)] = true;
    }
  }
  return mask;
}

double in_mask_energy_fraction(const VecC& samples, const std::vector<bool>& mask) {
  VecC bins = fft(samples);
  double inside = 0.0, total = 0.0;
  for (Eigen::Index j = 0; j < bins.size(); ++j) {
    total += std::norm(bins[j]);
    if (mask[size_t(j)]) inside += std::norm(bins[j]);
  }
  return total > 0.0 ? inside / total : 0.0;
}

namespace {

using nlohmann::json;

TransmissionSpec transmission_from_json(const json& j) {
  TransmissionSpec t;
  t.carrier_hz = j.at("carrier_hz").get<double>();
  t.bandwidth_hz = j.at("bandwidth_hz").get<double>();
  t.power = j.value("power", 1.0);
  t.modulation = modulation_from_string(j.value("modulation", std::string("filtered-noise")));
  t.symbol_rate_hz = j.value("symbol_rate_hz", 0.0);
  t.aoa_deg = j.value("aoa_deg", 90.0);
  t.seed = j.value("seed", std::uint64_t(0));
  return t;
}

json transmission_to_json(const TransmissionSpec& t) {
  return json{{"carrier_hz", t.carrier_hz},   {"bandwidth_hz", t.bandwidth_hz},
              {"power", t.power},             {"modulation", to_string(t.modulation)},
              {"symbol_rate_hz", t.symbol_rate_hz}, {"aoa_deg", t.aoa_deg},
              {"seed", t.seed}};
}

ChannelModel channel_from_json(const json& j) {
  ChannelModel ch;
  ch.kind = channel_kind_from_string(j.value("kind", std::string("ideal")));
  ch.sigma = j.value("sigma", 1.0);
  ch.pl0_db = j.value("pl0_db", 0.0);
  ch.gamma = j.value("gamma", 0.0);
  ch.d0 = j.value("d0", 1.0);
  ch.sigma_sh_db = j.value("sigma_sh_db", 0.0);
  ch.seed = j.value("seed", std::uint64_t(0));
  if (j.contains("distances")) {
    const auto& rows = j.at("distances");
    const auto n_rows = Eigen::Index(rows.size());
    const auto n_cols = n_rows > 0 ? Eigen::Index(rows.at(0).size()) : 0;
    ch.distances.resize(n_rows, n_cols);
    for (Eigen::Index r = 0; r < n_rows; ++r)
      for (Eigen::Index c = 0; c < n_cols; ++c)
        ch.distances(r, c) = rows.at(size_t(r)).at(size_t(c)).get<double>();
  }
  return ch;
}

json channel_to_json(const ChannelModel& ch) {
  json j{{"kind", to_string(ch.kind)}, {"sigma", ch.sigma},   {"pl0_db", ch.pl0_db},
         {"gamma", ch.gamma},          {"d0", ch.d0},         {"sigma_sh_db", ch.sigma_sh_db},
         {"seed", ch.seed}};
  if (ch.distances.size() > 0) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < ch.distances.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < ch.distances.cols(); ++c) row.push_back(ch.distances(r, c));
      rows.push_back(row);
    }
    j["distances"] = rows;
  }
  return j;
}

}  // namespace

SignalDocument parse_signal_document(const std::string& json_text) {
  json j = json::parse(json_text);
  SignalDocument doc;
  doc.f_nyq_hz = j.at("f_nyq_hz").get<double>();
  doc.duration_s = j.at("duration_s").get<double>();
  doc.complex_mode = j.value("complex_mode", false);
  doc.seed = j.value("seed", std::uint64_t(0));
  for (const auto& t : j.at("transmissions")) doc.transmissions.push_back(transmission_from_json(t));
  if (j.contains("channel")) doc.channel = channel_from_json(j.at("channel"));
  return doc;
}

std::string serialize_signal_document(const SignalDocument& doc) {
  json j{{"f_nyq_hz", doc.f_nyq_hz},
         {"duration_s", doc.duration_s},
         {"complex_mode", doc.complex_mode},
         {"seed", doc.seed}};
  json txs = json::array();
  for (const auto& t : doc.transmissions) txs.push_back(transmission_to_json(t));
  j["transmissions"] = txs;
  if (doc.channel) j["channel"] = channel_to_json(*doc.channel);
  return j.dump(2);
}

}  // namespace sense
