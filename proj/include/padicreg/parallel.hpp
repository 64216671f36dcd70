#pragma once

namespace padicreg {

/// Worker count for candidate scans: PADIC_THREADS when set (0 or 1 means
/// sequential), otherwise hardware concurrency capped at 8. Solvers reduce
/// candidates under a total order, so every worker count yields the same
/// result.
int default_worker_count();

/// requested < 0 selects default_worker_count(); 0 normalizes to 1.
int resolve_worker_count(int requested);

}  // namespace padicreg
