// segmenter/manifest.cc

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

#include "segmenter/manifest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "util/common.h"

namespace cjfe {

using nlohmann::json;

const UtteranceInfo &CorpusIndex::Find(const std::string &id) const {
  auto it = std::lower_bound(
      utterances.begin(), utterances.end(), id,
      [](const UtteranceInfo &u, const std::string &key) { return u.id < key; });
  if (it == utterances.end() || it->id != id) {
    throw DataError("corpus: unknown utterance '" + id + "'");
  }
  return *it;
}

std::vector<std::string> CorpusIndex::UtteranceIds() const {
  std::vector<std::string> ids;
  ids.reserve(utterances.size());
  for (const auto &u : utterances) ids.push_back(u.id);
  return ids;
}

std::vector<std::string> CorpusIndex::Speakers() const {
  std::vector<std::string> out;
  out.reserve(by_speaker.size());
  for (const auto &[spk, idx] : by_speaker) out.push_back(spk);
  return out;
}

void CorpusIndex::Finalize() {
  if (utterances.empty()) throw DataError("manifest: no utterances");
  std::sort(utterances.begin(), utterances.end(),
            [](const UtteranceInfo &a, const UtteranceInfo &b) { return a.id < b.id; });
  std::set<std::string> seen;
  std::vector<std::string> overlaps;
  for (const auto &u : utterances) {
    if (u.id.empty()) throw DataError("manifest: empty utterance_id");
    if (!seen.insert(u.id).second) {
      throw DataError("manifest: duplicate utterance_id '" + u.id + "'");
    }
    if (u.speaker.empty()) {
      throw DataError("manifest: utterance '" + u.id + "' has no speaker_id");
    }
    if (u.subset != "train" && u.subset != "test") {
      throw DataError("manifest: utterance '" + u.id + "' has bad subset '" +
                      u.subset + "'");
    }
    for (size_t i = 0; i < u.phones.size(); ++i) {
      const PhoneInterval &p = u.phones[i];
      if (p.start_sample < 0 || p.end_sample <= p.start_sample) {
        throw DataError("manifest: utterance '" + u.id +
                        "' has degenerate phone interval at index " +
                        std::to_string(i));
      }
      if (i > 0 && p.start_sample < u.phones[i - 1].end_sample) {
        overlaps.push_back(u.id + "[" + std::to_string(i - 1) + "," +
                           std::to_string(i) + "]");
      }
    }
  }
  if (!overlaps.empty()) {
    std::string msg = "manifest: overlapping phone segments: ";
    for (size_t i = 0; i < overlaps.size(); ++i) {
      if (i) msg += ", ";
      msg += overlaps[i];
    }
    throw DataError(msg);
  }
  by_speaker.clear();
  for (size_t i = 0; i < utterances.size(); ++i) {
    by_speaker[utterances[i].speaker].push_back(static_cast<int64_t>(i));
  }
}

CorpusIndex LoadManifest(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest '" + path + "'");
  CorpusIndex index;
  std::vector<std::string> missing_audio;
  std::string line;
  int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception &e) {
      throw FormatError("manifest '" + path + "' line " + std::to_string(line_no) +
                        ": " + e.what());
    }
    UtteranceInfo utt;
    utt.id = rec.value("utterance_id", "");
    utt.audio_path = rec.value("audio_path", "");
    utt.speaker = rec.value("speaker_id", "");
    utt.subset = rec.value("subset", "train");
    if (rec.contains("phones")) {
      for (const auto &p : rec.at("phones")) {
        PhoneInterval iv;
        iv.start_sample = p.at("start_sample").get<int64_t>();
        iv.end_sample = p.at("end_sample").get<int64_t>();
        iv.label = p.at("label").get<std::string>();
        utt.phones.push_back(std::move(iv));
      }
    } else if (rec.contains("phn_path")) {
      utt.phones = ParsePhnFile(rec.at("phn_path").get<std::string>());
    }
    std::sort(utt.phones.begin(), utt.phones.end(),
              [](const PhoneInterval &a, const PhoneInterval &b) {
                return a.start_sample < b.start_sample;
              });
    if (!utt.audio_path.empty() && !std::filesystem::exists(utt.audio_path)) {
      missing_audio.push_back(utt.audio_path);
    }
    index.utterances.push_back(std::move(utt));
  }
  if (!missing_audio.empty()) {
    std::string msg = "manifest '" + path + "': missing audio files: ";
    for (size_t i = 0; i < missing_audio.size(); ++i) {
      if (i) msg += ", ";
      msg += missing_audio[i];
    }
    throw IoError(msg);
  }
  index.Finalize();
  return index;
}

void SaveManifest(const CorpusIndex &index, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write manifest '" + path + "'");
  for (const auto &u : index.utterances) {
    json rec;
    rec["utterance_id"] = u.id;
    rec["audio_path"] = u.audio_path;
    rec["speaker_id"] = u.speaker;
    rec["subset"] = u.subset;
    json phones = json::array();
    for (const auto &p : u.phones) {
      phones.push_back({{"start_sample", p.start_sample},
                        {"end_sample", p.end_sample},
                        {"label", p.label}});
    }
    rec["phones"] = std::move(phones);
    out << rec.dump() << "\n";
  }
}

std::vector<PhoneInterval> ParsePhnFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open .PHN file '" + path + "'");
  std::vector<PhoneInterval> phones;
  std::string line;
  int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream is(line);
    PhoneInterval p;
    if (!(is >> p.start_sample >> p.end_sample >> p.label)) {
      throw FormatError("'" + path + "' line " + std::to_string(line_no) +
                        ": expected 'start end label'");
    }
    phones.push_back(std::move(p));
  }
  return phones;
}

std::vector<LabelledSegment> PhoneSegments(const UtteranceInfo &utt,
                                           int64_t shift_samples,
                                           int64_t num_frames) {
  if (shift_samples <= 0) throw ContractError("PhoneSegments: shift_samples must be > 0");
  std::vector<LabelledSegment> segments;
  for (const auto &p : utt.phones) {
    LabelledSegment seg;
    seg.utterance_id = utt.id;
    seg.start_frame = p.start_sample / shift_samples;
    seg.end_frame = std::min(p.end_sample / shift_samples, num_frames);
    seg.label = p.label;
    if (seg.start_frame < seg.end_frame) segments.push_back(std::move(seg));
  }
  return segments;
}

}  // namespace cjfe
