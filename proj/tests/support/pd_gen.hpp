#pragma once

// Synthetic registration/renewal corpora with OCR-style noise, for
// matcher and classifier property tests.

#include <string>
#include <vector>

#include "curator/pd/normalize.hpp"
#include "curator/pd/types.hpp"
#include "support/gen.hpp"

namespace pdgen {

struct Corpus {
  std::vector<curator::CopyrightRecord> regs;
  std::vector<curator::RenewalRecord> renewals;
};

inline std::string title_case_word(gen::Rng& rng) {
  std::string w;
  int len = gen::pick_int(rng, 3, 9);
  for (int i = 0; i < len; ++i) {
    char c = static_cast<char>('a' + gen::pick_int(rng, 0, 25));
    w += (i == 0) ? static_cast<char>(c - 'a' + 'A') : c;
  }
  return w;
}

inline std::string make_title(gen::Rng& rng) {
  std::string t;
  int words = gen::pick_int(rng, 2, 6);
  for (int i = 0; i < words; ++i) {
    if (i) t += ' ';
    t += title_case_word(rng);
  }
  return t;
}

inline std::string make_author(gen::Rng& rng) {
  return title_case_word(rng) + " " + title_case_word(rng);
}

// Character-level OCR damage: substitutions, deletions, duplications.
inline std::string ocr_noise(gen::Rng& rng, const std::string& s, int edits) {
  std::string out = s;
  for (int e = 0; e < edits && !out.empty(); ++e) {
    std::size_t pos = gen::pick_size(rng, 0, out.size() - 1);
    switch (gen::pick_int(rng, 0, 2)) {
      case 0:
        out[pos] = static_cast<char>('a' + gen::pick_int(rng, 0, 25));
        break;
      case 1:
        out.erase(pos, 1);
        break;
      default:
        out.insert(pos, 1, out[pos]);
        break;
    }
  }
  return out;
}

// n_regs registrations; derived renewals (with noise) for roughly
// renewal_fraction of them, plus unrelated noise renewals.
inline Corpus make_corpus(gen::Rng& rng, int n_regs, int n_renewals) {
  Corpus c;
  for (int i = 0; i < n_regs; ++i) {
    curator::CopyrightRecord r;
    r.reg_id = gen::pick_int(rng, 0, 9) == 0
                   ? std::string()
                   : "A" + std::to_string(100000 + i);
    r.title = make_title(rng);
    r.author = make_author(rng);
    if (gen::pick_int(rng, 0, 32) != 0) {
      r.pub_date = curator::PubDate{gen::pick_int(rng, 1925, 1975), {}, {}};
    }
    c.regs.push_back(curator::normalize_biblio(std::move(r)));
  }
  for (int j = 0; j < n_renewals; ++j) {
    curator::RenewalRecord ren;
    ren.renewal_id = "R" + std::to_string(500000 + j);
    bool derived = !c.regs.empty() && gen::pick_int(rng, 0, 9) < 6;
    if (derived) {
      const auto& src =
          c.regs[gen::pick_size(rng, 0, c.regs.size() - 1)];
      ren.title = ocr_noise(rng, src.title, gen::pick_int(rng, 0, 3));
      ren.author = ocr_noise(rng, src.author, gen::pick_int(rng, 0, 2));
      int id_mode = gen::pick_int(rng, 0, 9);
      if (id_mode < 5) {
        ren.original_reg_id = src.reg_id;
      } else if (id_mode < 8) {
        ren.original_reg_id = ocr_noise(rng, src.reg_id, 1);
      }
      int base = src.pub_date ? src.pub_date->year : 1950;
      int gap = gen::pick_int(rng, 0, 9) < 8 ? gen::pick_int(rng, 19, 29)
                                             : gen::pick_int(rng, 5, 45);
      ren.renewal_date = std::to_string(base + gap);
    } else {
      ren.title = make_title(rng);
      ren.author = make_author(rng);
      ren.renewal_date = std::to_string(gen::pick_int(rng, 1946, 1999));
    }
    c.renewals.push_back(curator::normalize_biblio(std::move(ren)));
  }
  return c;
}

}  // namespace pdgen
