#include "corpus_cache.hpp"

#include "qml/corpus.hpp"

namespace qml::testing {

const std::vector<Formula>& corpus() {
  static const std::vector<Formula> c = generate_corpus(kCorpusSeed, kCorpusSize);
  return c;
}

}  // namespace qml::testing
