import { describe, expect, it } from 'vitest';

import { SelectionState, SelectedRef } from '../src/state';

const ref = (instance: string, origin: string, type = 'Image'): SelectedRef => ({
  instance_id: instance,
  origin_id: origin,
  element_type: type,
  title: origin,
  instance_display_name: instance,
});

describe('SelectionState', () => {
  it('preview is the union of checked refs across panels', () => {
    const state = new SelectionState();
    state.toggle(ref('a', 'Image:1'));
    state.toggle(ref('a', 'Image:2'));
    state.toggle(ref('b', 'Experiment:1', 'Experiment'));
    expect(state.preview().map((r) => r.origin_id).sort()).toEqual(
      ['Experiment:1', 'Image:1', 'Image:2'],
    );
  });

  it('toggling twice unchecks', () => {
    const state = new SelectionState();
    state.toggle(ref('a', 'Image:1'));
    expect(state.isChecked(ref('a', 'Image:1'))).toBe(true);
    state.toggle(ref('a', 'Image:1'));
    expect(state.isChecked(ref('a', 'Image:1'))).toBe(false);
    expect(state.preview()).toEqual([]);
  });

  it('save is enabled exactly from two refs', () => {
    const state = new SelectionState();
    expect(state.canSave()).toBe(false);
    state.toggle(ref('a', 'Image:1'));
    expect(state.canSave()).toBe(false);
    state.toggle(ref('b', 'Experiment:1', 'Experiment'));
    expect(state.canSave()).toBe(true);
  });

  it('same origin id with different types are distinct selections', () => {
    const state = new SelectionState();
    state.toggle(ref('a', '7', 'Experiment'));
    state.toggle(ref('a', '7', 'Image'));
    expect(state.preview()).toHaveLength(2);
  });

  it('clear empties the preview', () => {
    const state = new SelectionState();
    state.toggle(ref('a', 'Image:1'));
    state.toggle(ref('a', 'Image:2'));
    state.clear();
    expect(state.preview()).toEqual([]);
    expect(state.canSave()).toBe(false);
  });
});
