import { describe, expect, it } from 'vitest';

import { isActionLegal, legalActions } from '../src/guards.js';
import { EVENT_KINDS, type ItemStatus } from '../src/types.js';
import { makeState } from './helpers.js';

const STATUSES: ItemStatus[] = [
  'Pending',
  'Answered',
  'UnderEdit',
  'AwaitingReview',
  'Accepted',
  'Excluded',
];

describe('action guards', () => {
  it('nothing is legal on an Excluded item', () => {
    const state = makeState('img0', { status: 'Excluded' });
    expect(legalActions(state, 'alice')).toEqual([]);
  });

  it('exclusion is legal from every non-terminal status', () => {
    for (const status of STATUSES) {
      const want = status !== 'Excluded';
      const state = makeState('img0', { status });
      expect(isActionLegal(state, 'ExcludeNSFW', 'alice')).toBe(want);
      expect(isActionLegal(state, 'ExcludeUnnatural', 'alice')).toBe(want);
    }
  });

  it('Answer only from Pending', () => {
    for (const status of STATUSES) {
      expect(isActionLegal(makeState('i', { status }), 'Answer', 'a')).toBe(
        status === 'Pending',
      );
    }
  });

  it('Unlock from Pending or Answered', () => {
    for (const status of STATUSES) {
      expect(isActionLegal(makeState('i', { status }), 'Unlock', 'a')).toBe(
        status === 'Pending' || status === 'Answered',
      );
    }
  });

  it('edits require UnderEdit', () => {
    for (const status of STATUSES) {
      for (const kind of ['EditChoice', 'RedesignQuestion'] as const) {
        expect(isActionLegal(makeState('i', { status }), kind, 'a')).toBe(
          status === 'UnderEdit',
        );
      }
    }
  });

  it('review requires AwaitingReview and a different expert', () => {
    const state = makeState('i', { status: 'AwaitingReview', author: 'bob' });
    expect(isActionLegal(state, 'ReviewVerdict', 'alice')).toBe(true);
    expect(isActionLegal(state, 'ReviewVerdict', 'bob')).toBe(false);
  });

  it('every kind gets a defined verdict in every status', () => {
    for (const status of STATUSES) {
      for (const kind of EVENT_KINDS) {
        const v = isActionLegal(makeState('i', { status }), kind, 'a');
        expect(typeof v).toBe('boolean');
      }
    }
  });
});
