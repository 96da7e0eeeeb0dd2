/**
 * Client-side legality of each action, mirroring the service's transition
 * guards. A button is enabled iff the matching event would be accepted;
 * the service remains the authority and the client re-syncs on rejection.
 */
import type { EventKind, ItemState } from './types.js';

export function isActionLegal(
  state: ItemState,
  kind: EventKind,
  expertId: string,
): boolean {
  if (state.status === 'Excluded') return false;
  switch (kind) {
    case 'ExcludeUnnatural':
    case 'ExcludeNSFW':
      return true;
    case 'Answer':
      return state.status === 'Pending';
    case 'Unlock':
      return state.status === 'Pending' || state.status === 'Answered';
    case 'EditChoice':
    case 'RedesignQuestion':
      return state.status === 'UnderEdit';
    case 'ReviewVerdict':
      return state.status === 'AwaitingReview' && state.author !== expertId;
  }
}

export function legalActions(state: ItemState, expertId: string): EventKind[] {
  const kinds: EventKind[] = [
    'Answer',
    'Unlock',
    'EditChoice',
    'RedesignQuestion',
    'ReviewVerdict',
    'ExcludeUnnatural',
    'ExcludeNSFW',
  ];
  return kinds.filter((k) => isActionLegal(state, k, expertId));
}
