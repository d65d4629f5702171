"""LLM clients for contradiction-based augmentation.

Wire format of the HTTP client: POST a JSON body `{"prompt": "..."}` to the
configured endpoint; the response is a JSON object whose `completion` field
holds the generated text. The auth token, if any, is read from an environment
variable and sent as a Bearer header.
"""

from __future__ import annotations

import json
import os
import urllib.error
import urllib.request
from typing import Protocol

from .errors import LlmTransportError

PROMPT_TEMPLATES = {
    1: 'Contradict this sentence with colorful words "{sentence}"',
    2: 'Without using despite, while, and although, '
       'contradict this sentence with colorful words "{sentence}"',
}

DEFAULT_TOKEN_ENV = "CLAIMAUG_LLM_TOKEN"


class LlmClient(Protocol):
    def complete(self, prompt: str) -> str:
        ...


class MockLlmClient:
    """Offline stand-in: replays canned replies and records every prompt.

    `fail_times` makes the first N calls raise a transport error, for retry
    testing. With a list of replies they are consumed in order; a single
    string is repeated forever.
    """

    def __init__(self, reply: str = "", replies: list[str] | None = None, fail_times: int = 0):
        self.reply = reply
        self.replies = list(replies) if replies is not None else None
        self.fail_times = fail_times
        self.prompts: list[str] = []
        self._calls = 0

    def complete(self, prompt: str) -> str:
        self._calls += 1
        if self._calls <= self.fail_times:
            raise LlmTransportError("mock transport failure")
        self.prompts.append(prompt)
        if self.replies is not None:
            if not self.replies:
                return ""
            return self.replies.pop(0)
        return self.reply


class EchoLlmClient:
    """Offline default: deterministic pseudo-contradiction of the quoted sentence.

    Produces a usable token stream without any network access, so augmented
    corpora stay reproducible in --offline runs.
    """

    def complete(self, prompt: str) -> str:
        start = prompt.find('"')
        end = prompt.rfind('"')
        quoted = prompt[start + 1:end] if 0 <= start < end else prompt
        return f"It is absolutely not true that {quoted}"


class HttpLlmClient:
    def __init__(self, endpoint: str, token_env: str = DEFAULT_TOKEN_ENV, timeout: float = 30.0):
        self.endpoint = endpoint
        self.token_env = token_env
        self.timeout = timeout

    def complete(self, prompt: str) -> str:
        body = json.dumps({"prompt": prompt}).encode("utf-8")
        headers = {"Content-Type": "application/json"}
        token = os.environ.get(self.token_env)
        if token:
            headers["Authorization"] = f"Bearer {token}"
        request = urllib.request.Request(self.endpoint, data=body, headers=headers, method="POST")
        try:
            with urllib.request.urlopen(request, timeout=self.timeout) as response:
                payload = json.loads(response.read().decode("utf-8"))
        except (urllib.error.URLError, urllib.error.HTTPError, TimeoutError, OSError) as exc:
            raise LlmTransportError(f"LLM endpoint {self.endpoint}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise LlmTransportError(f"LLM endpoint returned malformed JSON: {exc}") from exc
        if not isinstance(payload, dict) or "completion" not in payload:
            raise LlmTransportError("LLM response missing 'completion' field")
        return str(payload["completion"])
