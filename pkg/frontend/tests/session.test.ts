import { describe, expect, it } from 'vitest';

import { ApiClient } from '../src/client.js';
import { AnnotationSession, bundleWithEdits } from '../src/viewState.js';
import { CAPTION, makeBundle, makeState } from './helpers.js';

/** fetch stub speaking just enough of the service protocol. */
function fakeService() {
  const state = makeState('img0');
  const calls: Array<{ path: string; body?: unknown }> = [];
  const impl = (async (url: RequestInfo | URL, init?: RequestInit) => {
    const path = String(url);
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    calls.push({ path, body });
    const json = (status: number, payload: unknown) =>
      new Response(JSON.stringify(payload), {
        status,
        headers: { 'Content-Type': 'application/json' },
      });
    if (path.includes('/item/next')) {
      return json(200, { empty: false, bundle: makeBundle('img0'), state });
    }
    if (path.includes('/event')) {
      if (body.kind === 'Answer' && state.status !== 'Pending') {
        return json(409, {
          detail: { error: 'illegal', state },
        });
      }
      if (body.kind === 'Answer') state.status = 'Answered';
      if (body.kind === 'Unlock') state.status = 'UnderEdit';
      if (body.kind === 'EditChoice') state.status = 'AwaitingReview';
      return json(200, { state });
    }
    if (path.includes('/state/')) {
      return json(200, { state });
    }
    return json(404, { detail: 'no route' });
  }) as typeof fetch;
  return { impl, calls, state };
}

describe('AnnotationSession', () => {
  it('keyboard flow: 1-4 selects, Enter answers', async () => {
    const svc = fakeService();
    const session = new AnnotationSession(
      new ApiClient('http://svc', svc.impl),
      'alice',
    );
    await session.loadNext();
    await session.handleKey('3');
    expect(session.view.selectedOption).toBe(2);
    await session.handleKey('Enter');
    expect(session.view.state?.status).toBe('Answered');
    const eventCall = svc.calls.find((c) => c.path.includes('/event'));
    expect((eventCall?.body as any).payload.mcq_selected).toBe(2);
  });

  it('blocks an illegal action locally without a network call', async () => {
    const svc = fakeService();
    svc.state.status = 'Answered';
    const session = new AnnotationSession(
      new ApiClient('http://svc', svc.impl),
      'alice',
    );
    await session.loadNext();
    const before = svc.calls.length;
    await expect(session.submit('Answer')).rejects.toThrow('not legal');
    expect(svc.calls.length).toBe(before);
  });

  it('re-syncs from /state on a 409', async () => {
    const svc = fakeService();
    const session = new AnnotationSession(
      new ApiClient('http://svc', svc.impl),
      'alice',
    );
    await session.loadNext();
    // another tab answers in between; our local guard still thinks Pending
    svc.state.status = 'Answered';
    svc.state.answered_by = 'bob';
    await expect(session.submit('Answer')).rejects.toThrow();
    expect(session.view.state?.status).toBe('Answered');
    expect(svc.calls.some((c) => c.path.includes('/state/img0'))).toBe(true);
  });

  it('blocks an invalid edit client-side with the rule text', async () => {
    const svc = fakeService();
    const session = new AnnotationSession(
      new ApiClient('http://svc', svc.impl),
      'alice',
    );
    await session.loadNext();
    await session.submit('Unlock');
    session.setField('caption', 'too short');
    expect(session.view.validation?.ok).toBe(false);
    const before = svc.calls.length;
    await expect(session.submit('EditChoice')).rejects.toThrow('caption length');
    expect(svc.calls.length).toBe(before);
  });

  it('sends the dirty buffer as the edit payload', async () => {
    const svc = fakeService();
    const session = new AnnotationSession(
      new ApiClient('http://svc', svc.impl),
      'alice',
    );
    await session.loadNext();
    await session.submit('Unlock');
    session.setField('mcq_question', 'what color');
    await session.submit('EditChoice');
    const edit = svc.calls.filter((c) => c.path.includes('/event')).pop();
    expect((edit?.body as any).payload.fields).toEqual({
      mcq_question: 'what color',
    });
    expect(session.view.editBuffer).toEqual({});
  });
});

describe('bundleWithEdits', () => {
  it('applies every editable field without touching the original', () => {
    const base = makeBundle('img0');
    const edited = bundleWithEdits(base, {
      yon_answer: false,
      mcq_correct: 2,
      caption: CAPTION,
    });
    expect(edited.yon.answer).toBe(false);
    expect(edited.mcq.correct).toBe(2);
    expect(base.yon.answer).toBe(true);
  });
});
