// segmenter/manifest.h

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

#ifndef CJFE_SEGMENTER_MANIFEST_H_
#define CJFE_SEGMENTER_MANIFEST_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cjfe {

struct PhoneInterval {
  int64_t start_sample = 0;
  int64_t end_sample = 0;  // exclusive
  std::string label;
};

struct UtteranceInfo {
  std::string id;
  std::string audio_path;  // may be empty when features come from a cache
  std::string speaker;
  std::string subset = "train";  // official partition: "train" | "test"
  std::vector<PhoneInterval> phones;
};

// In-memory corpus index built from a JSON-lines manifest. One record per
// utterance: {utterance_id, audio_path, speaker_id, phones:[{start_sample,
// end_sample, label}]}, plus optional "subset" and "phn_path" keys.
struct CorpusIndex {
  std::vector<UtteranceInfo> utterances;  // sorted by id
  std::map<std::string, std::vector<int64_t>> by_speaker;  // -> indices

  const UtteranceInfo &Find(const std::string &id) const;
  std::vector<std::string> UtteranceIds() const;
  std::vector<std::string> Speakers() const;

  // Rebuilds by_speaker and sorts utterances; validates ids/speakers/phones.
  void Finalize();
};

CorpusIndex LoadManifest(const std::string &path);
void SaveManifest(const CorpusIndex &index, const std::string &path);

// TIMIT converter: each line is "start_sample end_sample label".
std::vector<PhoneInterval> ParsePhnFile(const std::string &path);

// A labelled stretch of frames inside one utterance; end exclusive.
struct LabelledSegment {
  std::string utterance_id;
  int64_t start_frame = 0;
  int64_t end_frame = 0;
  std::string label;
};

// Converts phone boundaries from samples to frames (floor(sample / shift)),
// clamping to the actual frame count; degenerate segments are dropped.
std::vector<LabelledSegment> PhoneSegments(const UtteranceInfo &utt,
                                           int64_t shift_samples,
                                           int64_t num_frames);

}  // namespace cjfe

#endif  // CJFE_SEGMENTER_MANIFEST_H_
