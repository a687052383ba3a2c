//! Client-side quota accounting and bounded retries.

use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant, SystemTime, UNIX_EPOCH};

use super::transport::{ApiRequest, ApiResponse, Transport};
use crate::error::{CorpusError, Result};

pub trait Clock: Send + Sync {
    /// Monotonic time since an arbitrary origin.
    fn now(&self) -> Duration;
    /// Wall-clock Unix time in seconds.
    fn epoch_secs(&self) -> u64;
    fn sleep(&self, d: Duration);
}

pub struct SystemClock {
    origin: Instant,
}

impl Default for SystemClock {
    fn default() -> Self {
        Self { origin: Instant::now() }
    }
}

impl Clock for SystemClock {
    fn now(&self) -> Duration {
        self.origin.elapsed()
    }

    fn epoch_secs(&self) -> u64 {
        SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
    }

    fn sleep(&self, d: Duration) {
        std::thread::sleep(d)
    }
}

/// `requests` per `period`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Quota {
    pub requests: u32,
    pub period: Duration,
}

impl Quota {
    pub const SEARCH_AUTHENTICATED: Quota = Quota { requests: 30, period: Duration::from_secs(60) };
    pub const SEARCH_ANONYMOUS: Quota = Quota { requests: 10, period: Duration::from_secs(60) };
    pub const CORE_AUTHENTICATED: Quota = Quota { requests: 5000, period: Duration::from_secs(3600) };
    pub const CORE_ANONYMOUS: Quota = Quota { requests: 60, period: Duration::from_secs(3600) };
}

#[derive(Debug)]
struct Bucket {
    quota: Quota,
    tokens: f64,
    updated: Duration,
}

impl Bucket {
    fn new(quota: Quota, now: Duration) -> Self {
        Self { quota, tokens: f64::from(quota.requests), updated: now }
    }

    /// Takes a token, possibly on credit, and returns how long the caller
    /// must wait before using it.
    fn reserve(&mut self, now: Duration) -> Duration {
        let rate = f64::from(self.quota.requests) / self.quota.period.as_secs_f64();
        let elapsed = now.saturating_sub(self.updated).as_secs_f64();
        self.tokens = (self.tokens + elapsed * rate).min(f64::from(self.quota.requests));
        self.updated = now;
        self.tokens -= 1.0;
        if self.tokens >= 0.0 {
            Duration::ZERO
        } else {
            Duration::from_secs_f64(-self.tokens / rate)
        }
    }
}

/// Token buckets for the search and core quotas. Every request passes
/// through one shared instance.
pub struct RateLimiter {
    search: Mutex<Bucket>,
    core: Mutex<Bucket>,
    clock: Arc<dyn Clock>,
}

impl RateLimiter {
    pub fn new(search: Quota, core: Quota, clock: Arc<dyn Clock>) -> Self {
        let now = clock.now();
        Self { search: Mutex::new(Bucket::new(search, now)), core: Mutex::new(Bucket::new(core, now)), clock }
    }

    pub fn for_token(authenticated: bool, clock: Arc<dyn Clock>) -> Self {
        if authenticated {
            Self::new(Quota::SEARCH_AUTHENTICATED, Quota::CORE_AUTHENTICATED, clock)
        } else {
            Self::new(Quota::SEARCH_ANONYMOUS, Quota::CORE_ANONYMOUS, clock)
        }
    }

    /// Blocks until `req` may be sent under its quota.
    pub fn acquire(&self, req: &ApiRequest) {
        let bucket = if req.path.starts_with("/search/") { &self.search } else { &self.core };
        let wait = bucket.lock().unwrap_or_else(|p| p.into_inner()).reserve(self.clock.now());
        if !wait.is_zero() {
            log::info!("rate limit: waiting {:.1}s before {}", wait.as_secs_f64(), req.path);
            self.clock.sleep(wait);
        }
    }
}

/// Wraps a transport with quota accounting and bounded retries on rate-limit
/// rejections, server errors and network failures.
pub struct Gatekeeper<T> {
    inner: T,
    limiter: RateLimiter,
    clock: Arc<dyn Clock>,
    max_retries: u32,
    backoff: Duration,
    max_wait: Duration,
}

impl<T: Transport> Gatekeeper<T> {
    pub fn new(inner: T, limiter: RateLimiter, clock: Arc<dyn Clock>) -> Self {
        Self { inner, limiter, clock, max_retries: 3, backoff: Duration::from_secs(1), max_wait: Duration::from_secs(120) }
    }

    /// Longest platform-requested wait honored before giving up with
    /// [`CorpusError::RateLimited`].
    pub fn with_max_wait(mut self, max_wait: Duration) -> Self {
        self.max_wait = max_wait;
        self
    }

    pub fn with_backoff(mut self, backoff: Duration, max_retries: u32) -> Self {
        self.backoff = backoff;
        self.max_retries = max_retries;
        self
    }
}

impl<T: Transport> Transport for Gatekeeper<T> {
    fn get(&self, req: &ApiRequest) -> Result<ApiResponse> {
        let mut attempt = 0;
        loop {
            self.limiter.acquire(req);
            let backoff = self.backoff * 2u32.saturating_pow(attempt);
            let outcome = self.inner.get(req);
            let retry_in = match &outcome {
                Ok(resp) => match resp.rate_limit_wait(self.clock.epoch_secs()) {
                    Some(wait) if attempt >= self.max_retries || wait > self.max_wait => {
                        return Err(CorpusError::RateLimited { wait });
                    }
                    Some(wait) => wait,
                    None if resp.status >= 500 => backoff,
                    None => return outcome,
                },
                Err(CorpusError::Transport(_)) => backoff,
                Err(_) => return outcome,
            };
            if attempt >= self.max_retries {
                return outcome;
            }
            attempt += 1;
            log::warn!("retrying {} in {:.1}s (attempt {attempt})", req.path, retry_in.as_secs_f64());
            self.clock.sleep(retry_in);
        }
    }

    fn is_replay(&self) -> bool {
        self.inner.is_replay()
    }
}
