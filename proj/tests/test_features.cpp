#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mindrace/features.hpp"

using namespace mindrace;

namespace {

Epoch make_epoch(int channels, double fs, double seconds, int cls = 0) {
  Epoch e;
  e.fs = fs;
  e.class_id = cls;
  e.epoch_index = 0;
  e.data = Eigen::MatrixXd::Zero(channels, std::llround(seconds * fs));
  return e;
}

Spectrum constant_spectrum(int channels, int bins, double value) {
  Spectrum s;
  s.fs = 2.0 * (bins - 1);
  s.df = 1.0;
  s.magnitudes = Eigen::MatrixXd::Constant(channels, bins, value);
  return s;
}

}  // namespace

TEST_SUITE("features") {

TEST_CASE("window counts follow the shift formula") {
  CHECK(slide_windows(make_epoch(2, 160, 4.0)).size() == 31);
  CHECK(slide_windows(make_epoch(2, 160, 3.0)).size() == 21);
  CHECK(slide_windows(make_epoch(2, 160, 1.0)).size() == 1);
  CHECK_THROWS_AS(slide_windows(make_epoch(2, 160, 0.5)), std::invalid_argument);
}

TEST_CASE("window count property over assorted geometry") {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> fs_pick(32, 512);
  std::uniform_real_distribution<double> len_pick(1.0, 6.0);
  for (int trial = 0; trial < 40; ++trial) {
    const double fs = fs_pick(rng);
    const double secs = len_pick(rng);
    const auto e = make_epoch(1, fs, secs);
    const std::int64_t l = e.data.cols();
    const std::int64_t w = std::llround(fs);
    const std::int64_t shift = std::llround(0.1 * fs);
    const auto wins = slide_windows(e);
    CHECK(static_cast<std::int64_t>(wins.size()) == (l - w) / shift + 1);
    for (const auto& win : wins) {
      CHECK(win.offset % shift == 0);
      CHECK(win.class_id == e.class_id);
    }
  }
}

TEST_CASE("fft_abs invariants") {
  const double fs = 160.0;
  Epoch e = make_epoch(2, fs, 1.0);
  for (Eigen::Index t = 0; t < e.data.cols(); ++t) {
    e.data(0, t) = 1.5 * std::sin(2.0 * std::numbers::pi * 10.0 * t / fs);
    e.data(1, t) = 0.75;
  }
  const auto wins = slide_windows(e);
  const auto s = fft_abs(wins[0]);
  CHECK(s.df == doctest::Approx(1.0));
  CHECK(s.magnitudes.cols() == 81);
  CHECK(s.magnitudes(0, 10) == doctest::Approx(1.5 * 160 / 2).epsilon(1e-6));
  CHECK(s.magnitudes(1, 0) == doctest::Approx(0.75 * 160).epsilon(1e-9));
}

TEST_CASE("feature_average bin rule") {
  const auto s = constant_spectrum(3, 81, 2.0);
  const auto f = feature_average(s, 7.0, 14.0);  // alpha: bins 7..13
  for (int c = 0; c < 3; ++c) CHECK(f(c) == doctest::Approx(2.0));

  Spectrum one = constant_spectrum(1, 81, 0.0);
  one.magnitudes(0, 9) = 7.0;  // single nonzero bin inside [7,14)
  CHECK(feature_average(one, 7.0, 14.0)(0) == doctest::Approx(1.0));

  CHECK_THROWS_AS(feature_average(s, 10.0, 10.5), std::invalid_argument);
  CHECK_THROWS_AS(feature_average(s, 10.0, 200.0), std::invalid_argument);
}

TEST_CASE("feature_range column layout") {
  const auto s = constant_spectrum(2, 81, 3.0);
  const auto r30 = feature_range(s, 4.0, 30.0);
  CHECK(r30.values.cols() == 13);
  const auto r40 = feature_range(s, 2.0, 40.0);
  CHECK(r40.values.cols() == 19);
  for (Eigen::Index j = 0; j < 19; ++j)
    for (int c = 0; c < 2; ++c) CHECK(r40.values(c, j) == doctest::Approx(3.0));
  CHECK(r40.bands.front() == std::pair<double, double>{2.0, 4.0});
  CHECK(r40.bands.back() == std::pair<double, double>{38.0, 40.0});
  CHECK_THROWS_AS(feature_range(s, 4.0, 31.0), std::invalid_argument);
}

TEST_CASE("range columns partition the full span") {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g(0.0, 1.0);
  Spectrum s = constant_spectrum(4, 81, 0.0);
  for (Eigen::Index i = 0; i < s.magnitudes.size(); ++i)
    s.magnitudes(i) = std::abs(g(rng)) + 0.1;
  const auto r = feature_range(s, 4.0, 30.0);
  const auto whole = feature_average(s, 4.0, 30.0);
  // 13 bins of 2 Hz, each holding 2 spectral lines: the mean of column
  // means equals the full-span mean
  Eigen::VectorXd recombined = Eigen::VectorXd::Zero(4);
  for (Eigen::Index j = 0; j < r.values.cols(); ++j) recombined += r.values.col(j);
  recombined /= static_cast<double>(r.values.cols());
  for (int c = 0; c < 4; ++c)
    CHECK(recombined(c) == doctest::Approx(whole(c)).epsilon(1e-9));
}

TEST_CASE("l2_normalize") {
  Eigen::VectorXd v(2);
  v << 3.0, 4.0;
  const auto u = l2_normalize(v);
  CHECK(u(0) == doctest::Approx(0.6));
  CHECK(u(1) == doctest::Approx(0.8));
  CHECK(std::abs(u.norm() - 1.0) < 1e-9);
  const auto uu = l2_normalize(u);
  CHECK((uu - u).cwiseAbs().maxCoeff() < 1e-9);
  CHECK_THROWS_WITH_AS(l2_normalize(Eigen::VectorXd::Zero(3)),
                       "degenerate feature", std::invalid_argument);
}

TEST_CASE("scaling invariance of normalized features") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g(0.0, 5.0);
  Epoch e = make_epoch(3, 128, 1.0);
  for (Eigen::Index i = 0; i < e.data.size(); ++i) e.data(i) = g(rng);
  Epoch scaled = e;
  scaled.data *= 4.0;

  const auto fa = feature_range(fft_abs(slide_windows(e)[0]), 2.0, 40.0);
  const auto fb = feature_range(fft_abs(slide_windows(scaled)[0]), 2.0, 40.0);
  for (Eigen::Index j = 0; j < fa.values.cols(); ++j) {
    // linearity of the unnormalized features
    for (int c = 0; c < 3; ++c)
      CHECK(fb.values(c, j) == doctest::Approx(4.0 * fa.values(c, j)).epsilon(1e-9));
    const auto ua = l2_normalize(fa.values.col(j));
    const auto ub = l2_normalize(fb.values.col(j));
    CHECK((ua - ub).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("named bands") {
  CHECK(BandSpec::named("theta").f_low == 4.0);
  CHECK(BandSpec::named("theta").f_high == 7.0);
  CHECK(BandSpec::named("alpha").f_high == 14.0);
  CHECK(BandSpec::named("range40").is_range());
  CHECK_FALSE(BandSpec::named("beta").is_range());
  CHECK_THROWS_AS(BandSpec::named("delta"), std::invalid_argument);
}

TEST_CASE("feature file round trip") {
  std::mt19937_64 rng(44);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<FeatureMatrix> windows;
  for (int w = 0; w < 5; ++w) {
    FeatureMatrix fm;
    fm.values.resize(3, 13);
    for (Eigen::Index i = 0; i < fm.values.size(); ++i) fm.values(i) = g(rng);
    for (int j = 0; j < 13; ++j) fm.bands.emplace_back(4.0 + 2 * j, 6.0 + 2 * j);
    fm.class_id = w % 2;
    fm.parent_epoch = w / 2;
    windows.push_back(std::move(fm));
  }
  const std::string path = "/tmp/mindrace_test_features.mrx";
  write_feature_file(path, windows, {"C3", "Cz", "C4"});
  const auto back = read_feature_file(path);
  REQUIRE(back.windows.size() == 5);
  CHECK(back.channel_names == std::vector<std::string>{"C3", "Cz", "C4"});
  for (int w = 0; w < 5; ++w) {
    CHECK(back.windows[w].class_id == windows[w].class_id);
    CHECK(back.windows[w].parent_epoch == windows[w].parent_epoch);
    CHECK((back.windows[w].values - windows[w].values).cwiseAbs().maxCoeff() <
          1e-6);
  }
}

}  // TEST_SUITE
