import type { ItemState, QABundle } from '../src/types.js';

export const CAPTION = Array.from({ length: 35 }, (_, i) => `word${i}`).join(' ');

export function makeBundle(imageId: string): QABundle {
  return {
    image_id: imageId,
    yon: { question: 'is there a square', answer: true },
    mcq: {
      question: 'what shape',
      options: ['square', 'circle', 'triangle', 'hexagon'],
      correct: 0,
    },
    vqa: { question: 'what shape', answer: 'a square' },
    cap: { caption: CAPTION },
  };
}

export function makeState(
  imageId: string,
  overrides: Partial<ItemState> = {},
): ItemState {
  return {
    image_id: imageId,
    status: 'Pending',
    answered_by: null,
    author: null,
    changed_fields: [],
    exclusion: null,
    ...overrides,
  };
}
