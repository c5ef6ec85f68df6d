#ifndef QAPNET_IO_H_
#define QAPNET_IO_H_

#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qapnet/dyadic_matrix.h"
#include "qapnet/node_set.h"
#include "qapnet/qap.h"

namespace qapnet {

// Key/value pairs echoed into output headers so every file records the
// configuration that produced it.
using Provenance = std::vector<std::pair<std::string, std::string>>;

void WriteProvenance(std::ostream& out, const Provenance& provenance);

// Sparse dyad file: `sample_id,node_a,node_b,<column>...`, one row per
// within-sample dyad with any nonzero or missing value (missing = empty
// field). Absent dyads read back as 0.
void WriteDyadColumns(std::ostream& out, const NodeSet& nodes,
                      const std::vector<const DyadicMatrix*>& columns,
                      const Provenance& provenance = {});

// Rows naming nodes outside `nodes` are an error unless `skip_unknown`.
std::map<std::string, DyadicMatrix> ReadDyadColumns(std::istream& in, const NodeSet& nodes,
                                                    bool skip_unknown = false);

// JSON: {"dependent", "terms": ["expr" | {"label", "term"}], "permutations",
// "seed", "transform"}. Missing fields keep their defaults.
QapModelSpec ReadModelSpec(std::istream& in);
void WriteModelSpec(std::ostream& out, const QapModelSpec& spec);

// CSV `term,estimate,p_one,p_two,e_est,pct_2_5,pct_97_5`, a blank line,
// then `r2,adj_r2,resid_skewness,n_dyads,permutations,seed` and its row.
void WriteResultsCsv(std::ostream& out, const QapFit& fit, const Provenance& provenance = {});
void WriteResultsJson(std::ostream& out, const QapFit& fit, const Provenance& provenance = {});

}  // namespace qapnet

#endif  // QAPNET_IO_H_
