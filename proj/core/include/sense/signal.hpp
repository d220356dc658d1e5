#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sense/common.hpp"

namespace sense {

enum class Modulation { kAm, kBpsk, kQpsk, kQam16, kOfdm, kFilteredNoise };

Modulation modulation_from_string(const std::string& s);
std::string to_string(Modulation m);

/// One transmission of the multiband model: a band of width bandwidth_hz
/// centered at carrier_hz. Real-mode synthesis mirrors it at -carrier_hz, so
/// N_sig transmissions occupy K = 2*N_sig bands.
struct TransmissionSpec {
  double carrier_hz = 0.0;
  double bandwidth_hz = 0.0;
  double power = 1.0;
  Modulation modulation = Modulation::kFilteredNoise;
  double symbol_rate_hz = 0.0;  // digital modulations; subcarrier spacing for OFDM
  double aoa_deg = 90.0;        // used only by the array samplers
  std::uint64_t seed = 0;
};

struct MultibandSignal {
  VecC samples;          // composite, on the Nyquist grid
  double f_nyq_hz = 0.0;
  bool complex_mode = false;
  std::vector<TransmissionSpec> truth;
  std::vector<VecC> components;  // per-transmission passband signals
  bool overlapping_bands = false;

  Eigen::Index length() const { return samples.size(); }
  double duration_s() const { return double(samples.size()) / f_nyq_hz; }
};

struct ChannelModel {
  enum class Kind { kIdeal, kRayleigh, kShadowing, kBoth };
  Kind kind = Kind::kIdeal;
  double sigma = 1.0;        // Rayleigh parameter; mean power is 2*sigma^2
  double pl0_db = 0.0;       // path loss at the reference distance, dB
  double gamma = 0.0;        // path loss exponent
  double d0 = 1.0;           // reference distance
  double sigma_sh_db = 0.0;  // log-normal shadowing std dev, dB
  MatD distances;            // (transmission, receiver) -> distance
  std::uint64_t seed = 0;
};

ChannelModel::Kind channel_kind_from_string(const std::string& s);
std::string to_string(ChannelModel::Kind k);

/// Synthesizes the multiband signal on the reference Nyquist grid.
/// duration_s * f_nyq_hz must be an integer >= 64. In real mode (default) the
/// output samples are real valued and the spectrum is conjugate symmetric.
MultibandSignal synthesize(const std::vector<TransmissionSpec>& specs, double f_nyq_hz,
                           double duration_s, std::uint64_t seed, bool complex_mode = false);

/// Per-(transmission, receiver) channel gain, drawn once per trial from
/// ch.seed. Rayleigh gains are frequency flat per band; shadowing follows the
/// log-normal path loss law. The output support never exceeds the input's.
MultibandSignal apply_channel(const MultibandSignal& x, const ChannelModel& ch, int receiver_index);

/// Complex gain the channel assigns to (transmission, receiver); exposed so
/// tests can check the draw distribution directly.
cd channel_gain(const ChannelModel& ch, int transmission_index, int receiver_index);

/// Adds white noise scaled so that (signal power)/(noise power), both
/// measured inside the occupied bands of x.truth, equals snr_db exactly on
/// this realization. +infinity returns x unchanged.
MultibandSignal add_noise(const MultibandSignal& x, double snr_db, std::uint64_t seed);

/// DFT-bin mask of the declared occupied bands (conjugate bands included in
/// real mode). Bands are padded by one bin on each side so grid rounding
/// never clips declared support.
std::vector<bool> occupied_bin_mask(const std::vector<TransmissionSpec>& truth, Eigen::Index length,
                                    double f_nyq_hz, bool complex_mode);

/// Fraction of spectral energy of `samples` that falls inside `mask`.
double in_mask_energy_fraction(const VecC& samples, const std::vector<bool>& mask);

/// JSON (de)serialization of the experiment signal description:
/// {f_nyq_hz, duration_s, transmissions:[...], channel:{...}}.
struct SignalDocument {
  double f_nyq_hz = 0.0;
  double duration_s = 0.0;
  bool complex_mode = false;
  std::uint64_t seed = 0;
  std::vector<TransmissionSpec> transmissions;
  std::optional<ChannelModel> channel;
};

SignalDocument parse_signal_document(const std::string& json_text);
std::string serialize_signal_document(const SignalDocument& doc);

}  // namespace sense
