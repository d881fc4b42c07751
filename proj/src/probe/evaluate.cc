// probe/evaluate.cc

// Copyright 2026  CJFE Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "probe/evaluate.h"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <set>

#include "util/common.h"
#include "util/rng.h"

namespace cjfe {

int64_t ClassifySegment(const Matrix &frame_log_posteriors) {
  if (frame_log_posteriors.rows == 0) {
    throw ContractError("classify_segment: empty posterior list");
  }
  const int64_t classes = frame_log_posteriors.cols;
  std::vector<double> total(classes, 0.0);
  for (int64_t t = 0; t < frame_log_posteriors.rows; ++t) {
    for (int64_t c = 0; c < classes; ++c) {
      total[c] += frame_log_posteriors.At(t, c);
    }
  }
  int64_t best = 0;
  for (int64_t c = 1; c < classes; ++c) {
    if (total[c] > total[best]) best = c;  // ties keep the lowest index
  }
  return best;
}

int64_t ClassifySegment(
    const std::vector<std::vector<double>> &frame_log_posteriors) {
  if (frame_log_posteriors.empty()) {
    throw ContractError("classify_segment: empty posterior list");
  }
  Matrix m(static_cast<int64_t>(frame_log_posteriors.size()),
           static_cast<int64_t>(frame_log_posteriors[0].size()));
  for (size_t t = 0; t < frame_log_posteriors.size(); ++t) {
    if (frame_log_posteriors[t].size() != frame_log_posteriors[0].size()) {
      throw DimensionError("classify_segment: ragged posterior list");
    }
    std::copy(frame_log_posteriors[t].begin(), frame_log_posteriors[t].end(),
              m.Row(static_cast<int64_t>(t)).begin());
  }
  return ClassifySegment(m);
}

nlohmann::json ProbeReport::ToJson() const {
  nlohmann::json j;
  j["task"] = task;
  j["accuracy"] = accuracy;
  j["correct"] = correct;
  j["total"] = total;
  j["classes"] = classes;
  j["confusion"] = confusion;
  j["config_digest"] = config_digest;
  j["wall_ms"] = wall_ms;
  return j;
}

namespace {

// Per-window classifier input. The "tconv" head sees the window's embedding
// with its in-segment neighbours concatenated (edges replicated), giving the
// probe one step of temporal context.
Matrix ProbeInputs(const Matrix &embeddings, const std::string &head) {
  if (head == "mlp") return embeddings;
  const int64_t n = embeddings.rows, k = embeddings.cols;
  Matrix out(n, 3 * k);
  for (int64_t i = 0; i < n; ++i) {
    const int64_t prev = std::max<int64_t>(0, i - 1);
    const int64_t next = std::min<int64_t>(n - 1, i + 1);
    std::copy(embeddings.Row(prev).begin(), embeddings.Row(prev).end(),
              out.Row(i).begin());
    std::copy(embeddings.Row(i).begin(), embeddings.Row(i).end(),
              out.Row(i).begin() + k);
    std::copy(embeddings.Row(next).begin(), embeddings.Row(next).end(),
              out.Row(i).begin() + 2 * k);
  }
  return out;
}

struct TrainingPool {
  std::vector<double> inputs;  // flattened rows
  std::vector<int64_t> labels;
  int64_t dim = 0;

  void Append(const Matrix &rows, int64_t label) {
    if (dim == 0) dim = rows.cols;
    inputs.insert(inputs.end(), rows.data.begin(), rows.data.end());
    labels.insert(labels.end(), rows.rows, label);
  }

  Matrix AsMatrix() const {
    Matrix m(static_cast<int64_t>(labels.size()), dim);
    m.data = inputs;
    return m;
  }
};

struct SegmentTask {
  std::string utterance_id;
  LabelledSegment segment;
  int64_t label = 0;
};

// Shared phone/speaker evaluation: collect training rows per segment, train
// the probe, then score test segments with summed log posteriors.
ProbeReport RunProbe(const Corpus &corpus, Model *model,
                     const ProbeRunConfig &cfg, const std::string &task_name,
                     const std::vector<std::string> &classes,
                     const std::vector<SegmentTask> &train_segments,
                     const std::vector<SegmentTask> &test_segments) {
  const auto t0 = std::chrono::steady_clock::now();

  TrainingPool pool;
  for (const auto &item : train_segments) {
    const FeatureMatrix &feat = corpus.Features(item.utterance_id);
    std::vector<WindowSample> windows =
        SegmentWindows(feat, item.segment, cfg.window);
    if (windows.empty()) continue;
    Matrix emb = model->EmbedWindows(windows);
    pool.Append(ProbeInputs(emb, cfg.head), item.label);
  }
  if (pool.labels.empty()) throw DataError("probe: no training segments");

  if (cfg.shuffle_labels) {
    Rng rng = Rng::Derive(cfg.optim.seed, 0x5f00);
    rng.Shuffle(&pool.labels);
  }

  ProbeClassifierConfig clf_cfg;
  clf_cfg.input_dim = pool.dim;
  clf_cfg.hidden_units = cfg.hidden_units;
  clf_cfg.n_classes = static_cast<int64_t>(classes.size());
  clf_cfg.leaky_slope = cfg.leaky_slope;
  clf_cfg.head = cfg.head;
  clf_cfg.optim = cfg.optim;
  ProbeClassifier clf(clf_cfg);
  clf.Train(pool.AsMatrix(), pool.labels);

  ProbeReport report;
  report.task = task_name;
  report.classes = classes;
  report.config_digest = cfg.config_digest;
  for (const auto &item : test_segments) {
    const FeatureMatrix &feat = corpus.Features(item.utterance_id);
    std::vector<WindowSample> windows =
        SegmentWindows(feat, item.segment, cfg.window);
    if (windows.empty()) continue;
    Matrix emb = model->EmbedWindows(windows);
    Matrix log_post = clf.LogPosteriors(ProbeInputs(emb, cfg.head));
    const int64_t decision = ClassifySegment(log_post);
    report.total += 1;
    report.correct += decision == item.label ? 1 : 0;
    report.confusion[classes[item.label]][classes[decision]] += 1;
  }
  if (report.total == 0) throw DataError("probe: no test segments");
  report.accuracy = static_cast<double>(report.correct) / report.total;
  report.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return report;
}

int64_t ClassIndex(const std::vector<std::string> &classes,
                   const std::string &label, const char *what) {
  auto it = std::lower_bound(classes.begin(), classes.end(), label);
  if (it == classes.end() || *it != label) {
    throw DataError(std::string("probe: unknown ") + what + " '" + label + "'");
  }
  return it - classes.begin();
}

}  // namespace

ProbeReport EvaluatePhone(const Corpus &corpus, Model *model,
                          const ProbeRunConfig &cfg) {
  // Class list: every phone label in the corpus manifest.
  std::set<std::string> label_set;
  for (const auto &utt : corpus.index.utterances) {
    for (const auto &p : utt.phones) label_set.insert(p.label);
  }
  if (label_set.size() < 2) throw DataError("probe: need at least 2 phone classes");
  std::vector<std::string> classes(label_set.begin(), label_set.end());

  std::vector<SegmentTask> train_segments, test_segments;
  for (const auto &utt : corpus.index.utterances) {
    const FeatureMatrix &feat = corpus.Features(utt.id);
    auto segments =
        PhoneSegments(utt, corpus.ShiftSamples(feat), feat.NumFrames());
    for (auto &seg : segments) {
      SegmentTask item;
      item.utterance_id = utt.id;
      item.label = ClassIndex(classes, seg.label, "phone");
      item.segment = std::move(seg);
      if (utt.subset == "train") {
        train_segments.push_back(std::move(item));
      } else {
        test_segments.push_back(std::move(item));
      }
    }
  }
  return RunProbe(corpus, model, cfg, "phone", classes, train_segments,
                  test_segments);
}

ProbeReport EvaluateSpeaker(const Corpus &corpus, const TaskSplit &split,
                            Model *model, const ProbeRunConfig &cfg) {
  std::set<std::string> speaker_set;
  for (const auto &id : split.clf_train) speaker_set.insert(corpus.index.Find(id).speaker);
  std::vector<std::string> classes(speaker_set.begin(), speaker_set.end());
  for (const auto &id : split.test) {
    const std::string &spk = corpus.index.Find(id).speaker;
    if (!speaker_set.count(spk)) {
      throw DataError("probe: test speaker '" + spk +
                      "' absent from classifier training set");
    }
  }
  if (classes.size() < 2) throw DataError("probe: need at least 2 speakers");

  auto whole_utterance = [&](const std::string &id) {
    const FeatureMatrix &feat = corpus.Features(id);
    SegmentTask item;
    item.utterance_id = id;
    item.segment.utterance_id = id;
    item.segment.start_frame = 0;
    item.segment.end_frame = feat.NumFrames();
    item.segment.label = corpus.index.Find(id).speaker;
    item.label = ClassIndex(classes, item.segment.label, "speaker");
    return item;
  };
  std::vector<SegmentTask> train_segments, test_segments;
  for (const auto &id : split.clf_train) train_segments.push_back(whole_utterance(id));
  for (const auto &id : split.test) test_segments.push_back(whole_utterance(id));

  return RunProbe(corpus, model, cfg, std::string("speaker_") + split.task,
                  classes, train_segments, test_segments);
}

std::vector<SweepRow> Sweep(const std::string &param,
                            const std::vector<double> &values,
                            const std::string &task,
                            const std::function<ProbeReport(double)> &runner) {
  if (values.empty()) throw ContractError("sweep: no values given");
  std::vector<SweepRow> rows;
  for (double v : values) {
    const auto t0 = std::chrono::steady_clock::now();
    ProbeReport report = runner(v);
    SweepRow row;
    row.param = param;
    row.value = v;
    row.task = task;
    row.accuracy = report.accuracy;
    row.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    rows.push_back(row);
  }
  return rows;
}

void WriteSweepCsv(const std::vector<SweepRow> &rows, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write sweep table '" + path + "'");
  out << "param,value,task,accuracy\n";
  for (const auto &r : rows) {
    out << r.param << "," << r.value << "," << r.task << "," << r.accuracy
        << "\n";
  }
}

}  // namespace cjfe
